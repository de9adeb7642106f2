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

#include "modalpca/mode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "modalpca/kernel.hpp"

namespace modalpca::mode {

double kde(std::span<const double> sample, double m, Bandwidth h) {
  if (sample.empty()) throw DegenerateSample("density of an empty sample");
  const double inv_h = 1.0 / h.value();
  double sum = 0.0;
  for (double x : sample) {
    const double t = (m - x) * inv_h;
    sum += std::exp(-0.5 * t * t);
  }
  return sum * kernel::kInvSqrt2Pi * inv_h / static_cast<double>(sample.size());
}

double half_sample_mode(std::span<const double> sample) {
  if (sample.empty()) throw DegenerateSample("half-sample mode of an empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());

  std::size_t lo = 0;
  std::size_t count = x.size();
  while (count > 3) {
    const std::size_t window = (count + 1) / 2;
    std::size_t best = lo;
    double best_range = x[lo + window - 1] - x[lo];
    for (std::size_t i = lo + 1; i + window <= lo + count; ++i) {
      const double range = x[i + window - 1] - x[i];
      if (range < best_range) {
        best_range = range;
        best = i;
      }
    }
    lo = best;
    count = window;
  }

  switch (count) {
    case 1:
      return x[lo];
    case 2:
      return 0.5 * (x[lo] + x[lo + 1]);
    default: {
      const double left = x[lo + 1] - x[lo];
      const double right = x[lo + 2] - x[lo + 1];
      if (left < right) return 0.5 * (x[lo] + x[lo + 1]);
      if (right < left) return 0.5 * (x[lo + 1] + x[lo + 2]);
      return x[lo + 1];
    }
  }
}

ModeEstimate newton_mode(std::span<const double> sample, Bandwidth h, double m0,
                         const NewtonOptions& opts) {
  if (sample.empty()) throw DegenerateSample("mode of an empty sample");
  if (!std::isfinite(m0)) throw InvalidArgument("initial mode must be finite");
  if (opts.max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  const double tol = opts.tol.value_or(1e-8 * h.value());
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  const double inv_h = 1.0 / h.value();
  const double f0 = kde(sample, m0, h);

  double m = m0;
  double best_m = m0;
  double best_f = f0;
  int iterations = 0;
  bool converged = false;

  for (int it = 1; it <= opts.max_iter; ++it) {
    double F = 0.0;
    double dF = 0.0;
    for (double x : sample) {
      const double z = m - x;
      const double t = z * inv_h;
      const double k = kernel::kInvSqrt2Pi * inv_h * std::exp(-0.5 * t * t);
      F += z * k;
      dF += (1.0 - t * t) * k;
    }
    if (std::abs(dF) < 1e-12) break;
    const double step = F / dF;
    const double next = m - step;
    if (!std::isfinite(step) || !std::isfinite(next)) break;

    iterations = it;
    m = next;
    const double f = kde(sample, m, h);
    if (f > best_f) {
      best_f = f;
      best_m = m;
    }
    if (std::abs(step) < tol) {
      converged = true;
      break;
    }
  }

  if (converged) {
    const double f = kde(sample, m, h);
    if (f >= f0) return {m, f, iterations, true};
  }
  return {best_m, best_f, iterations, false};
}

}  // namespace modalpca::mode
