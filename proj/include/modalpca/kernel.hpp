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

#include <span>

#include "modalpca/types.hpp"

namespace modalpca::kernel {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Consistency factor that turns the MAD into a normal-scale estimate
/// (the default of R's mad()).
inline constexpr double kNormalMadScale = 1.4826;

/// Standard normal density.
double gaussian(double z);

/// phi(z / h) / h.
double scaled(double z, Bandwidth h);

struct Derivatives {
  double d1;
  double d2;
};

/// First and second derivative of the standard normal density at z.
Derivatives derivatives(double z);

/// Median; even-length samples use the midpoint of the two central values.
double median(std::span<const double> sample);

/// Raw median absolute deviation about the median (no consistency factor).
double median_absolute_deviation(std::span<const double> sample);

/// Oversmoothed bandwidth 1.144 * s * N^(-1/5) with s = mad_scale * MAD.
///
/// If more than half the sample coincides (MAD = 0) the smallest positive gap
/// between sorted distinct values, times N^(-1/5), is used instead. Throws
/// DegenerateSample for fewer than two points or a constant sample.
Bandwidth terrell_bandwidth(std::span<const double> projected, double mad_scale = 1.0);

}  // namespace modalpca::kernel
