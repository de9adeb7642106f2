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

#include <optional>
#include <span>

#include "modalpca/types.hpp"

namespace modalpca::mode {

struct ModeEstimate {
  double m;
  double density;  // (1/N) sum phi_h(m - x_i)
  int iterations;
  bool converged;
};

struct NewtonOptions {
  /// Step tolerance; defaults to 1e-8 * h when unset.
  std::optional<double> tol;
  int max_iter = 50;
};

/// Kernel density estimate (1/N) sum phi_h(m - x_i).
double kde(std::span<const double> sample, double m, Bandwidth h);

/// Half-sample mode: keep the ceil(k/2) consecutive order statistics with the
/// smallest range until at most three points remain.
double half_sample_mode(std::span<const double> sample);

/// Newton iteration on F(m) = sum (m - x_i) phi_h(m - x_i), safeguarded so the
/// returned point never has a lower density than m0.
ModeEstimate newton_mode(std::span<const double> sample, Bandwidth h, double m0,
                         const NewtonOptions& opts = {});

}  // namespace modalpca::mode
