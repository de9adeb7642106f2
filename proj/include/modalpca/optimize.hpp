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

#include <functional>

#include <Eigen/Core>

namespace modalpca::optimize {

/// Returns f(x); writes the gradient into *grad when grad is non-null.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct CgOptions {
  double grad_tol = 1e-8;
  int max_iter = 100;
};

struct CgResult {
  Eigen::VectorXd x;
  double value;
  double grad_norm;
  int iterations;
  bool converged;
};

/// Nonlinear conjugate gradient (Polak-Ribiere+, restarted every dim(x)
/// iterations or whenever the direction stops being a descent direction)
/// with a strong-Wolfe line search. The returned point never has a larger
/// objective than x0. Throws OptimizationFailure (carrying the best iterate)
/// if the objective or gradient becomes non-finite.
CgResult minimize_cg(const Objective& f, Eigen::VectorXd x0, const CgOptions& opts);

}  // namespace modalpca::optimize
