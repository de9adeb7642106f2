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
#include <limits>
#include <vector>

#include "modalpca/kernel.hpp"
#include "modalpca/rng.hpp"

using namespace modalpca;

TEST(Kernel, GaussianValues) {
  EXPECT_NEAR(kernel::gaussian(0.0), 0.3989422804, 1e-10);
  EXPECT_NEAR(kernel::gaussian(1.0), 0.2419707245, 1e-10);
  EXPECT_EQ(kernel::gaussian(-1.0), kernel::gaussian(1.0));
}

TEST(Kernel, ScaledValues) {
  EXPECT_NEAR(kernel::scaled(0.0, Bandwidth(1.0)), 0.3989422804, 1e-10);
  EXPECT_NEAR(kernel::scaled(0.0, Bandwidth(2.0)), 0.1994711402, 1e-10);
  EXPECT_NEAR(kernel::scaled(3.0, Bandwidth(1.0)), 0.0044318484, 1e-10);
}

TEST(Kernel, BandwidthRejectsBadValues) {
  EXPECT_THROW(Bandwidth(0.0), InvalidArgument);
  EXPECT_THROW(Bandwidth(-1.0), InvalidArgument);
  EXPECT_THROW(Bandwidth(std::nan("")), InvalidArgument);
  EXPECT_THROW(Bandwidth{std::numeric_limits<double>::infinity()}, InvalidArgument);
}

TEST(Kernel, Derivatives) {
  auto d0 = kernel::derivatives(0.0);
  EXPECT_NEAR(d0.d1, 0.0, 1e-15);
  EXPECT_NEAR(d0.d2, -0.3989422804, 1e-10);
  auto d1 = kernel::derivatives(1.0);
  EXPECT_NEAR(d1.d1, -0.2419707245, 1e-10);
  EXPECT_NEAR(d1.d2, 0.0, 1e-15);
  auto d2 = kernel::derivatives(2.0);
  EXPECT_NEAR(d2.d1, -2.0 * kernel::gaussian(2.0), 1e-15);
  EXPECT_NEAR(d2.d2, 3.0 * kernel::gaussian(2.0), 1e-15);
}

TEST(Kernel, DerivativesMatchFiniteDifferences) {
  for (double z = -5.0; z <= 5.0; z += 0.37) {
    const double e = 1e-5;
    const double fd1 = (kernel::gaussian(z + e) - kernel::gaussian(z - e)) / (2 * e);
    const double fd2 =
        (kernel::derivatives(z + e).d1 - kernel::derivatives(z - e).d1) / (2 * e);
    const auto d = kernel::derivatives(z);
    EXPECT_NEAR(d.d1, fd1, 1e-6 * std::max(1e-3, std::abs(fd1)));
    EXPECT_NEAR(d.d2, fd2, 1e-6 * std::max(1e-3, std::abs(fd2)));
  }
}

TEST(Kernel, ScaledPeakBound) {
  Rng rng(3);
  for (int i = 0; i < 20000; ++i) {
    const double z = rng.uniform(-10, 10);
    const double h = std::exp(rng.uniform(-8, 5));
    EXPECT_LE(h * std::sqrt(2 * M_PI) * kernel::scaled(z, Bandwidth(h)), 1.0 + 1e-15);
  }
}

TEST(Kernel, MedianAndMad) {
  std::vector<double> s{-1, 0, 1, 2};
  EXPECT_DOUBLE_EQ(kernel::median(s), 0.5);
  EXPECT_DOUBLE_EQ(kernel::median_absolute_deviation(s), 1.0);
  std::vector<double> odd{3, 1, 2};
  EXPECT_DOUBLE_EQ(kernel::median(odd), 2.0);
}

TEST(Kernel, TerrellExamples) {
  std::vector<double> s{-1, 0, 1, 2};
  EXPECT_NEAR(kernel::terrell_bandwidth(s).value(), 1.144 * std::pow(4.0, -0.2), 1e-12);
  EXPECT_NEAR(kernel::terrell_bandwidth(s).value(), 0.86699, 1e-5);

  // symmetric, 100 points: two zeros, 23 inner pairs, two pairs at +-1, 24 outer pairs
  std::vector<double> m{0.0, 0.0, 1.0, -1.0, 1.0, -1.0};
  for (int i = 1; i <= 23; ++i) m.insert(m.end(), {0.04 * i, -0.04 * i});
  for (int i = 1; i <= 24; ++i) m.insert(m.end(), {1.0 + 0.1 * i, -1.0 - 0.1 * i});
  ASSERT_EQ(m.size(), 100u);
  ASSERT_DOUBLE_EQ(kernel::median(m), 0.0);
  ASSERT_DOUBLE_EQ(kernel::median_absolute_deviation(m), 1.0);
  EXPECT_NEAR(kernel::terrell_bandwidth(m).value(), 1.144 * std::pow(10.0, -0.4), 1e-12);
  EXPECT_NEAR(kernel::terrell_bandwidth(m).value(), 0.455435, 1e-6);
}

TEST(Kernel, TerrellScalesLinearly) {
  Rng rng(5);
  std::vector<double> s(57);
  for (auto& x : s) x = rng.normal();
  const double h = kernel::terrell_bandwidth(s).value();
  for (auto& x : s) x *= 3.5;
  EXPECT_NEAR(kernel::terrell_bandwidth(s).value(), 3.5 * h, 1e-12);
  EXPECT_NEAR(kernel::terrell_bandwidth(s, kernel::kNormalMadScale).value(),
              3.5 * h * kernel::kNormalMadScale, 1e-12);
}

TEST(Kernel, TerrellZeroMadFallback) {
  std::vector<double> s{1, 1, 1, 1, 2, 4};
  ASSERT_EQ(kernel::median_absolute_deviation(s), 0.0);
  EXPECT_NEAR(kernel::terrell_bandwidth(s).value(), 1.0 * std::pow(6.0, -0.2), 1e-12);
}

TEST(Kernel, TerrellDegenerate) {
  std::vector<double> one{1.0};
  std::vector<double> constant{2, 2, 2};
  EXPECT_THROW(kernel::terrell_bandwidth(one), DegenerateSample);
  EXPECT_THROW(kernel::terrell_bandwidth(constant), DegenerateSample);
}
