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

#include "modalpca/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace modalpca::kernel {

namespace {

void require_finite(double z) {
  if (!std::isfinite(z)) throw InvalidArgument("kernel argument must be finite");
}

}  // namespace

double gaussian(double z) {
  require_finite(z);
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double scaled(double z, Bandwidth h) {
  require_finite(z);
  const double t = z / h.value();
  return kInvSqrt2Pi * std::exp(-0.5 * t * t) / h.value();
}

Derivatives derivatives(double z) {
  const double phi = gaussian(z);
  return {-z * phi, (z * z - 1.0) * phi};
}

double median(std::span<const double> sample) {
  if (sample.empty()) throw DegenerateSample("median of an empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

double median_absolute_deviation(std::span<const double> sample) {
  const double med = median(sample);
  std::vector<double> dev(sample.size());
  std::transform(sample.begin(), sample.end(), dev.begin(),
                 [med](double x) { return std::abs(x - med); });
  return median(dev);
}

Bandwidth terrell_bandwidth(std::span<const double> projected, double mad_scale) {
  const std::size_t n = projected.size();
  if (n < 2) throw DegenerateSample("bandwidth needs at least two points");
  if (!std::isfinite(mad_scale) || mad_scale <= 0.0) {
    throw InvalidArgument("MAD scale must be finite and positive");
  }
  const double shrink = std::pow(static_cast<double>(n), -0.2);
  const double mad = median_absolute_deviation(projected);
  if (mad > 0.0) return Bandwidth(1.144 * mad_scale * mad * shrink);

  std::vector<double> sorted(projected.begin(), projected.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) {
    const double g = sorted[i] - sorted[i - 1];
    if (g > 0.0) gap = std::min(gap, g);
  }
  if (!std::isfinite(gap)) throw DegenerateSample("all projected values are identical");
  return Bandwidth(gap * shrink);
}

}  // namespace modalpca::kernel
