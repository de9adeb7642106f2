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

#include <Eigen/Cholesky>

#include "modalpca/error.hpp"
#include "modalpca/optimize.hpp"

using namespace modalpca;

TEST(ConjugateGradient, Quadratic) {
  Eigen::MatrixXd A(3, 3);
  A << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
  const Eigen::Vector3d b(1, -2, 0.5);
  optimize::Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
    if (g) *g = A * x - b;
    return 0.5 * x.dot(A * x) - b.dot(x);
  };
  const auto r = optimize::minimize_cg(f, Eigen::VectorXd::Zero(3), {1e-10, 100});
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.x - A.ldlt().solve(b)).norm(), 1e-9);
}

TEST(ConjugateGradient, Rosenbrock) {
  optimize::Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
    const double a = 1 - x(0);
    const double b = x(1) - x(0) * x(0);
    if (g) {
      g->resize(2);
      (*g)(0) = -2 * a - 400 * x(0) * b;
      (*g)(1) = 200 * b;
    }
    return a * a + 100 * b * b;
  };
  const auto r = optimize::minimize_cg(f, Eigen::Vector2d(-1.2, 1.0), {1e-8, 5000});
  EXPECT_LT((r.x - Eigen::Vector2d(1, 1)).norm(), 1e-5);
}

TEST(ConjugateGradient, NeverIncreases) {
  optimize::Objective f = [](const Eigen::VectorXd& x, Eigen::VectorXd* g) {
    if (g) *g = Eigen::VectorXd::Constant(1, std::cos(x(0)));
    return std::sin(x(0));
  };
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(1, 0.3);
  const auto r = optimize::minimize_cg(f, x0, {1e-12, 50});
  EXPECT_LE(r.value, std::sin(0.3));
}

TEST(ConjugateGradient, NonFiniteStart) {
  optimize::Objective f = [](const Eigen::VectorXd&, Eigen::VectorXd* g) {
    if (g) *g = Eigen::VectorXd::Zero(1);
    return std::nan("");
  };
  EXPECT_THROW(optimize::minimize_cg(f, Eigen::VectorXd::Zero(1), {}), OptimizationFailure);
}
