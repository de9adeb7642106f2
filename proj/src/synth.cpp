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

#include "modalpca/synth.hpp"

#include <cmath>
#include <numeric>

#include "modalpca/rng.hpp"

namespace modalpca::synth {

std::string to_string(Family f) {
  switch (f) {
    case Family::gaussian_diag:
      return "gaussian-diag";
    case Family::laplace_scaled:
      return "laplace-scaled";
    case Family::lbbp_3d:
      return "lbbp-3d";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  if (s == "gaussian-diag") return Family::gaussian_diag;
  if (s == "laplace-scaled") return Family::laplace_scaled;
  if (s == "lbbp-3d") return Family::lbbp_3d;
  throw ConfigError("unknown scenario family '" + s + "'");
}

void ScenarioSpec::validate() const {
  if (n < 2) throw ConfigError("n must be at least 2");
  if (family == Family::lbbp_3d) {
    if (d != 3) throw ConfigError("lbbp-3d scenarios are three-dimensional (d = 3)");
    if (!sigma_z || !std::isfinite(*sigma_z) || *sigma_z <= 0.0) {
      throw ConfigError("lbbp-3d needs a positive sigma_z");
    }
  } else if (d < 2) {
    throw ConfigError("d must be at least 2");
  }
  if (!(outlier_fraction >= 0.0 && outlier_fraction < 1.0)) {
    throw ConfigError("outlier fraction (eps) must lie in [0, 1)");
  }
  if (!(std::isfinite(box_low) && std::isfinite(box_high) && box_low < box_high)) {
    throw ConfigError("outlier box needs finite low < high");
  }
}

int ScenarioSpec::outlier_count() const {
  return static_cast<int>(std::floor(outlier_fraction * n + 1e-9));
}

Scenario generate(const ScenarioSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const int d = spec.d;
  DataMatrix x(n, d);
  Eigen::VectorXd spectrum(d);

  for (int j = 0; j < d; ++j) {
    Rng rng(stream_seed(spec.seed, "inlier", static_cast<std::uint64_t>(j)));
    const double jj = j + 1.0;
    switch (spec.family) {
      case Family::gaussian_diag: {
        const double sd = 1.0 / jj;
        spectrum(j) = sd * sd;
        for (int i = 0; i < n; ++i) x(i, j) = sd * rng.normal();
        break;
      }
      case Family::laplace_scaled: {
        const double b = 10.0 / (jj * jj);
        spectrum(j) = 2.0 * b * b;
        for (int i = 0; i < n; ++i) x(i, j) = rng.laplace(1.0, b);
        break;
      }
      case Family::lbbp_3d: {
        const double var = j == 0 ? 1.0 : j == 1 ? 0.3 : (*spec.sigma_z) * (*spec.sigma_z);
        spectrum(j) = var;
        const double sd = std::sqrt(var);
        for (int i = 0; i < n; ++i) x(i, j) = sd * rng.normal();
        break;
      }
    }
  }

  // Fisher-Yates with our own stream; std::shuffle is implementation-defined
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle(stream_seed(spec.seed, "shuffle"));
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(shuffle.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }

  std::vector<bool> mask(static_cast<std::size_t>(n), true);
  const int n_out = spec.outlier_count();
  for (int j = 0; j < d; ++j) {
    Rng rng(stream_seed(spec.seed, "outlier", static_cast<std::uint64_t>(j)));
    for (int r = 0; r < n_out; ++r) {
      const int i = order[static_cast<std::size_t>(r)];
      if (spec.family == Family::lbbp_3d) {
        const double sd = j == 0 ? 0.1 : j == 1 ? std::sqrt(0.003) : *spec.sigma_z;
        const double loc = j == 2 ? 150.0 : 0.0;
        x(i, j) = loc + sd * rng.normal();
      } else {
        x(i, j) = rng.uniform(spec.box_low, spec.box_high);
      }
    }
  }
  for (int r = 0; r < n_out; ++r) mask[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = false;

  int k = 2;
  if (spec.family != Family::lbbp_3d) {
    k = baseline::dimension_95({spectrum.data(), static_cast<std::size_t>(d)});
  }
  Eigen::MatrixXd truth = Eigen::MatrixXd::Identity(d, d).leftCols(k);
  return {std::move(x), std::move(mask), std::move(spectrum), baseline::SubspaceBasis(truth)};
}

}  // namespace modalpca::synth
