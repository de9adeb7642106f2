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

#include <Eigen/Eigenvalues>

#include "modalpca/baseline.hpp"
#include "modalpca/estimator.hpp"
#include "test_util.hpp"

using namespace modalpca;
using modalpca::testing::angle_deg;
using modalpca::testing::gaussian_sample;
using modalpca::testing::random_unit;

TEST(Objective, Examples) {
  DataMatrix same(4, 2);
  same << 1, 5, 1, -2, 1, 0, 1, 7;
  EXPECT_NEAR(estimator::objective(same, 1.0, Direction::axis(2, 0), Bandwidth(0.5)),
              1.0 / (0.5 * std::sqrt(2 * M_PI)), 1e-14);

  DataMatrix one(1, 3);
  one << 0.3, -1, 2;
  const Direction v = Direction::normalized(Eigen::Vector3d(1, 2, 2));
  const double z = (0.7 - v.vec().dot(one.row(0).transpose())) / 0.8;
  EXPECT_NEAR(estimator::objective(one, 0.7, v, Bandwidth(0.8)),
              std::exp(-0.5 * z * z) / (0.8 * std::sqrt(2 * M_PI)), 1e-15);

  DataMatrix three(3, 2);
  three << 0, 4, 1, -3, 2, 9;
  EXPECT_NEAR(estimator::objective(three, 0.0, Direction::axis(2, 0), Bandwidth(1.0)),
              (1.0 + std::exp(-0.5) + std::exp(-2.0)) / (3.0 * std::sqrt(2 * M_PI)), 1e-15);
  EXPECT_NEAR(estimator::objective(three, 0.0, Direction::axis(2, 0), Bandwidth(1.0)), 0.231635, 1e-6);
}

TEST(Fit, GaussianComponentsMatchCpca) {
  const DataMatrix x = gaussian_sample(500, Eigen::Vector2d(2.0, 1.0), 12);
  estimator::FitConfig cfg;
  cfg.n_components = 2;
  const auto m = estimator::fit(x, cfg);
  ASSERT_EQ(m.components.size(), 2u);
  EXPECT_LT(angle_deg(m.components[0].direction.vec(), Eigen::Vector2d::UnitY()), 10.0);
  EXPECT_LT(angle_deg(m.components[1].direction.vec(), Eigen::Vector2d::UnitX()), 10.0);
  const auto pca = baseline::cpca_fit(x, 1);
  EXPECT_LT(angle_deg(m.components[0].direction.vec(), pca.eigenvectors.col(1)), 10.0);
}

TEST(Fit, FullSetIsOrthonormal) {
  const DataMatrix x = gaussian_sample(150, Eigen::Vector4d(1.0, 0.8, 0.5, 0.3), 13);
  estimator::FitConfig cfg;
  cfg.n_components = 4;
  const auto m = estimator::fit(x, cfg);
  const Eigen::MatrixXd V = m.minor_basis();
  EXPECT_TRUE((V.transpose() * V).isIdentity(1e-8));
  for (const auto& c : m.components) {
    EXPECT_NEAR(c.direction.vec().norm(), 1.0, 1e-12);
    EXPECT_GT(c.objective, 0.0);
  }
  Eigen::VectorXd center = Eigen::VectorXd::Zero(4);
  for (const auto& c : m.components) center += c.mode * c.direction.vec();
  EXPECT_LT((center - m.center).norm(), 1e-12);
  EXPECT_EQ(m.principal_basis(2).cols(), 2);
  EXPECT_THROW(m.principal_basis(), DimensionError);
}

TEST(Fit, PrincipalComplement) {
  const DataMatrix x = gaussian_sample(150, Eigen::Vector3d(2.0, 1.0, 0.2), 14);
  const auto m = estimator::fit(x, {});
  const Eigen::MatrixXd P = m.principal_basis();
  ASSERT_EQ(P.cols(), 2);
  EXPECT_LT((P.transpose() * m.components[0].direction.vec()).norm(), 1e-10);
}

TEST(Fit, Deterministic) {
  const DataMatrix x = gaussian_sample(120, Eigen::Vector3d(2.0, 1.0, 0.5), 15);
  estimator::FitConfig cfg;
  cfg.n_components = 2;
  const auto a = estimator::fit(x, cfg);
  const auto b = estimator::fit(x, cfg);
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(a.components[k].direction.vec(), b.components[k].direction.vec());
    EXPECT_EQ(a.components[k].mode, b.components[k].mode);
  }
}

TEST(Fit, AscentWithinBandwidthSegments) {
  for (int s = 0; s < 10; ++s) {
    const DataMatrix x = gaussian_sample(100, Eigen::VectorXd::LinSpaced(5, 1.5, 0.3), 100 + s);
    estimator::FitTrace trace;
    estimator::FitConfig cfg;
    cfg.n_components = 2;
    estimator::fit(x, cfg, &trace);
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i].kind == estimator::TraceStep::Kind::segment_start) continue;
      EXPECT_GE(trace[i].objective, trace[i - 1].objective - 1e-10);
    }
  }
}

TEST(Fit, ConfigErrors) {
  const DataMatrix x = gaussian_sample(50, Eigen::Vector2d(1.0, 0.5), 16);
  estimator::FitConfig cfg;
  cfg.n_components = 0;
  EXPECT_THROW(estimator::fit(x, cfg), ConfigError);
  cfg.n_components = 3;
  EXPECT_THROW(estimator::fit(x, cfg), DimensionError);
  DataMatrix bad = x;
  bad(3, 1) = std::nan("");
  EXPECT_THROW(estimator::fit(bad, {}), InvalidArgument);
}

TEST(DirectionUpdate, LineDataGivesNormal) {
  DataMatrix x(20, 2);
  for (int i = 0; i < 20; ++i) x.row(i) << 0.0, i - 9.5;
  const Direction start = Direction::normalized(Eigen::Vector2d(0.6, 0.8));
  const auto up = estimator::weighted_direction_update_detail(x, 0.0, start, {}, Bandwidth(1.0));
  EXPECT_TRUE(up.accepted);
  EXPECT_LT(angle_deg(up.direction.vec(), Eigen::Vector2d::UnitX()), 1e-4);
}

TEST(DirectionUpdate, FlatRelaxationKeepsCurrent) {
  DataMatrix x(4, 2);
  x << 1, 0, -1, 0, 0, 1, 0, -1;
  const Direction v = Direction::axis(2, 0);
  const auto up = estimator::weighted_direction_update_detail(x, 0.0, v, {}, Bandwidth(1e6));
  EXPECT_FALSE(up.accepted);
  EXPECT_EQ(up.direction.vec(), v.vec());
}

TEST(DirectionUpdate, RelaxedAndFullObjectiveOrdering) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const DataMatrix x = gaussian_sample(30, Eigen::Vector3d(1.0, 0.7, 0.4), 1000 + t);
    const Direction v = Direction::normalized(random_unit(3, rng));
    const double m = 0.3 * rng.normal();
    const Bandwidth h(0.3 + rng.uniform());
    const auto up = estimator::weighted_direction_update_detail(x, m, v, {}, h);
    if (up.accepted) {
      EXPECT_LE(up.relaxed_after, up.relaxed_before + 1e-12);
    }
    EXPECT_GE(estimator::objective(x, m, up.direction, h), estimator::objective(x, m, v, h));
  }
}

TEST(DirectionUpdate, KeepsConstraints) {
  const DataMatrix x = gaussian_sample(60, Eigen::Vector4d(1.0, 0.7, 0.4, 0.2), 18);
  const Direction c = Direction::axis(4, 3);
  const Direction v = Direction::normalized(Eigen::Vector4d(1, 1, 1, 0));
  const auto w = estimator::weighted_direction_update(x, 0.0, v, {c}, Bandwidth(0.5));
  EXPECT_LT(std::abs(w.dot(c)), 1e-10);
}

TEST(MaximizeDensity, StationaryOnSphere) {
  const DataMatrix x = gaussian_sample(200, Eigen::Vector3d(1.5, 1.0, 0.3), 19);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(200, 1.0 / 200);
  const Bandwidth h(0.2);
  const auto v = estimator::maximize_density(x, w, 0.0, h, Direction::axis(3, 2), {});
  Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
  for (int i = 0; i < 200; ++i) {
    const double z = x.row(i).dot(v.vec()) / 0.2;
    g += w(i) * z * std::exp(-0.5 * z * z) * x.row(i).transpose();
  }
  const Eigen::VectorXd tangential = g - g.dot(v.vec()) * v.vec();
  EXPECT_LT(tangential.norm(), 1e-8);
}
