// Copyright 2026 The modalpca Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "modalpca/baseline.hpp"
#include "test_util.hpp"

using namespace modalpca;
using modalpca::testing::angle_deg;
using modalpca::testing::gaussian_sample;

namespace {

// The three 3 x 2 bases of the worked spectral-distance example.
const double kR = 1.0 / std::sqrt(2.0);

Eigen::MatrixXd v1() {
  Eigen::MatrixXd m(3, 2);
  m << 0, 0, 1, 0, 0, 1;
  return m;
}
Eigen::MatrixXd v2() {
  Eigen::MatrixXd m(3, 2);
  m << 0, 0, kR, -kR, kR, kR;
  return m;
}
Eigen::MatrixXd v3() {
  Eigen::MatrixXd m(3, 2);
  m << 0, kR, 1, 0, 0, kR;
  return m;
}

}  // namespace

TEST(Specdist, WorkedExample) {
  const baseline::SubspaceBasis a(v1()), b(v2()), c(v3());
  EXPECT_NEAR(baseline::specdist(a, b), 0.0, 1e-12);
  EXPECT_NEAR(baseline::specdist(a, c), std::numbers::pi / 4, 1e-12);
}

TEST(Specdist, InvariantUnderColumnMixing) {
  Rng rng(1);
  Eigen::MatrixXd b(6, 3);
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = rng.normal();
  Eigen::Matrix3d r;
  r << 2, 1, 0, 0, 1, 3, 1, 0, 1;
  EXPECT_NEAR(baseline::specdist(baseline::SubspaceBasis(b), baseline::SubspaceBasis(b * r)), 0.0, 1e-7);
}

TEST(Specdist, OrthogonalLinesAndErrors) {
  const baseline::SubspaceBasis x(Eigen::MatrixXd(Eigen::Vector3d::UnitX()));
  const baseline::SubspaceBasis y(Eigen::MatrixXd(Eigen::Vector3d::UnitY()));
  EXPECT_NEAR(baseline::specdist(x, y), std::numbers::pi / 2, 1e-12);
  Eigen::MatrixXd dep(3, 2);
  dep << 1, 2, 1, 2, 0, 0;
  EXPECT_THROW(baseline::SubspaceBasis{dep}, InvalidBasis);
  const baseline::SubspaceBasis z2(Eigen::MatrixXd(Eigen::Vector2d::UnitX()));
  EXPECT_THROW(baseline::specdist(x, z2), InvalidBasis);
}

TEST(Cpca, RankOneData) {
  DataMatrix x(40, 3);
  x.setZero();
  for (int i = 0; i < 40; ++i) x(i, 0) = i % 2 ? 1.0 : -1.0;
  const auto r = baseline::cpca_fit(x, 1);
  EXPECT_NEAR(std::abs(r.basis.matrix()(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues(0), 40.0 / 39.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues(1), 0.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues(2), 0.0, 1e-12);
}

TEST(Cpca, GaussianLeadingAxis) {
  const DataMatrix x = gaussian_sample(2000, Eigen::Vector2d(std::sqrt(2.0), 1.0), 2);
  EXPECT_LT(angle_deg(baseline::cpca_fit(x, 1).basis.matrix().col(0), Eigen::Vector2d::UnitX()), 5.0);
}

TEST(Cpca, ClosedFormTwoByTwo) {
  // four points with covariance [[2,1],[1,2]] (divisor n - 1 = 3): +-a e' and +-b e''
  const double a = std::sqrt(4.5);
  const double b = std::sqrt(1.5);
  const double r2 = std::sqrt(0.5);
  DataMatrix x(4, 2);
  x << a * r2, a * r2, -a * r2, -a * r2, b * r2, -b * r2, -b * r2, b * r2;
  const auto r = baseline::cpca_fit(x, 1);
  EXPECT_NEAR(r.eigenvalues(0), 3.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues(1), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(r.eigenvectors(0, 0)), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(r.eigenvectors(0, 0), r.eigenvectors(1, 0), 1e-12);
}

TEST(Dimension95, Examples) {
  std::vector<double> g;
  for (int j = 1; j <= 20; ++j) g.push_back(1.0 / (j * j));
  // cumulative shares: 0.626, 0.783, 0.853, 0.892, 0.917, 0.935, 0.947, 0.955
  EXPECT_EQ(baseline::dimension_95(g), 8);
  EXPECT_EQ(baseline::dimension_95(std::vector<double>{1, 0, 0}), 1);
  EXPECT_EQ(baseline::dimension_95(std::vector<double>{1, 1}), 2);
}
