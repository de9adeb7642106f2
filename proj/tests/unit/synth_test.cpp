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

#include <algorithm>
#include <cmath>

#include "modalpca/baseline.hpp"
#include "modalpca/kernel.hpp"
#include "modalpca/synth.hpp"

using namespace modalpca;

TEST(Synth, GaussianMoments) {
  synth::ScenarioSpec s;
  s.n = 2000;
  s.seed = 1;
  const auto sc = synth::generate(s);
  const Eigen::MatrixXd cov = baseline::covariance(sc.data);
  EXPECT_NEAR(cov(0, 0), 1.0, 3.0 * std::sqrt(2.0 / s.n));
  for (int j = 0; j < 20; ++j) {
    EXPECT_NEAR(cov(j, j), 1.0 / ((j + 1.0) * (j + 1.0)), 4.0 * std::sqrt(2.0 / s.n) / ((j + 1.0) * (j + 1.0)));
  }
  EXPECT_LT(std::abs(cov(0, 1)), 4.0 / std::sqrt(s.n) * 0.5);
  EXPECT_EQ(sc.ground_truth.rank(), 8);
}

TEST(Synth, OutlierCountAndBox) {
  synth::ScenarioSpec s;
  s.outlier_fraction = 0.2;
  s.seed = 2;
  const auto sc = synth::generate(s);
  EXPECT_EQ(std::count(sc.inlier_mask.begin(), sc.inlier_mask.end(), false), 40);
  for (int i = 0; i < s.n; ++i) {
    if (sc.inlier_mask[i]) continue;
    EXPECT_GE(sc.data.row(i).minCoeff(), -1.0);
    EXPECT_LE(sc.data.row(i).maxCoeff(), 1.5);
  }
}

TEST(Synth, FloorOfOutlierCount) {
  synth::ScenarioSpec s;
  s.n = 100;
  s.outlier_fraction = 0.29;
  EXPECT_EQ(s.outlier_count(), 29);
  s.n = 7;
  s.outlier_fraction = 0.5;
  EXPECT_EQ(s.outlier_count(), 3);
}

TEST(Synth, LaplaceMoments) {
  synth::ScenarioSpec s;
  s.family = synth::Family::laplace_scaled;
  s.n = 4000;
  s.d = 4;
  s.seed = 3;
  const auto sc = synth::generate(s);
  for (int j = 0; j < 4; ++j) {
    const double b = 10.0 / ((j + 1.0) * (j + 1.0));
    std::vector<double> col(sc.data.col(j).data(), sc.data.col(j).data() + s.n);
    EXPECT_NEAR(kernel::median(col), 1.0, 3.0 * b / std::sqrt(s.n));
    const double mean = sc.data.col(j).mean();
    const double var = (sc.data.col(j).array() - mean).square().sum() / (s.n - 1);
    EXPECT_NEAR(var / (2 * b * b), 1.0, 0.15);
  }
  EXPECT_EQ(sc.ground_truth.rank(), 2);
}

TEST(Synth, DeterministicAndInliersStable) {
  synth::ScenarioSpec s;
  s.seed = 9;
  s.d = 5;
  const auto a = synth::generate(s);
  const auto b = synth::generate(s);
  EXPECT_EQ(a.data, b.data);
  s.outlier_fraction = 0.3;
  const auto c = synth::generate(s);
  for (int i = 0; i < s.n; ++i) {
    if (c.inlier_mask[i]) {
      EXPECT_EQ(a.data.row(i), c.data.row(i));
    }
  }
  EXPECT_EQ(std::count(c.inlier_mask.begin(), c.inlier_mask.end(), true), s.n - 60);
}

TEST(Synth, LbbpDesign) {
  synth::ScenarioSpec s;
  s.family = synth::Family::lbbp_3d;
  s.d = 3;
  s.n = 500;
  s.sigma_z = 0.1;
  s.outlier_fraction = 0.1;
  const auto sc = synth::generate(s);
  for (int i = 0; i < s.n; ++i) {
    if (sc.inlier_mask[i]) {
      EXPECT_LT(std::abs(sc.data(i, 2)), 1.0);
    } else {
      EXPECT_NEAR(sc.data(i, 2), 150.0, 1.0);
      EXPECT_LT(std::abs(sc.data(i, 0)), 0.6);
    }
  }
  const Eigen::MatrixXd g = sc.ground_truth.matrix();
  EXPECT_EQ(g, Eigen::MatrixXd(Eigen::MatrixXd::Identity(3, 3).leftCols(2)));
}

TEST(Synth, InvalidSpecs) {
  synth::ScenarioSpec s;
  s.outlier_fraction = 1.5;
  EXPECT_THROW(synth::generate(s), ConfigError);
  s.outlier_fraction = 0.0;
  s.family = synth::Family::lbbp_3d;
  s.d = 3;
  EXPECT_THROW(synth::generate(s), ConfigError);
  EXPECT_THROW(synth::family_from_string("cauchy"), ConfigError);
  EXPECT_EQ(synth::family_from_string(synth::to_string(synth::Family::laplace_scaled)),
            synth::Family::laplace_scaled);
}
