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

#include <Eigen/Core>

#include "modalpca/rng.hpp"
#include "modalpca/types.hpp"

namespace modalpca::testing {

/// n draws from N(0, diag(sd_1^2, ..., sd_d^2)).
inline DataMatrix gaussian_sample(int n, const Eigen::VectorXd& sd, std::uint64_t seed) {
  Rng rng(seed);
  DataMatrix x(n, sd.size());
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < sd.size(); ++j) x(i, j) = sd(j) * rng.normal();
  }
  return x;
}

inline Eigen::VectorXd random_unit(Eigen::Index d, Rng& rng) {
  Eigen::VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.normal();
  return v.normalized();
}

inline double angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = std::min(1.0, std::abs(a.normalized().dot(b.normalized())));
  return std::acos(c) * 180.0 / 3.14159265358979323846;
}

}  // namespace modalpca::testing
