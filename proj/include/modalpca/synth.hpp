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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modalpca/baseline.hpp"
#include "modalpca/types.hpp"

namespace modalpca::synth {

enum class Family {
  /// N(0, diag(1, 1/2^2, ..., 1/d^2)).
  gaussian_diag,
  /// Coordinate j ~ Laplace(1, 10/j^2).
  laplace_scaled,
  /// Inliers N(0, diag(1, 0.3, sigma_z^2)); outliers with the first two
  /// coordinates from N(0, 0.01 diag(1, 0.3)) and the third from
  /// N(150, sigma_z^2).
  lbbp_3d,
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct ScenarioSpec {
  Family family = Family::gaussian_diag;
  int d = 20;
  int n = 200;
  double outlier_fraction = 0.0;
  double box_low = -1.0;
  double box_high = 1.5;
  std::uint64_t seed = 0;
  std::optional<double> sigma_z;

  void validate() const;
  /// floor(outlier_fraction * n), guarded against representation error
  /// (0.29 * 100 counts as 29).
  int outlier_count() const;
};

struct Scenario {
  DataMatrix data;
  std::vector<bool> inlier_mask;
  /// Per-coordinate population variances.
  Eigen::VectorXd population_spectrum;
  /// Canonical axes spanning the principal subspace of the inliers.
  baseline::SubspaceBasis ground_truth;
};

/// Deterministic: identical ScenarioSpec values give bit-identical output.
/// Inlier coordinates are drawn first; the first floor(eps n) rows of a
/// seeded permutation are then overwritten with outliers, so changing only
/// the outlier fraction leaves the surviving inliers untouched.
Scenario generate(const ScenarioSpec& spec);

}  // namespace modalpca::synth
