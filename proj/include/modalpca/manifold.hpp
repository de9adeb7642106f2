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

#include "modalpca/types.hpp"

namespace modalpca::manifold {

/// Stereographic-type chart of the constrained sphere
///   M = { v in S^{d-1} : v'c_j = 0 for every constraint c_j, v != -v0 }
/// onto R^{d-k}, where k - 1 is the number of constraints.
///
///   forward(v)    = U'v / (1 + v0'v)
///   inverse(beta) = (2 U beta + (1 - |beta|^2) v0) / (1 + |beta|^2)
///
/// U holds an orthonormal basis of the complement of span{constraints, v0}.
/// Immutable after construction.
class Chart {
 public:
  const Direction& center() const noexcept { return v0_; }
  const Eigen::MatrixXd& basis() const noexcept { return U_; }
  const DirectionList& constraints() const noexcept { return constraints_; }
  Eigen::Index dim() const noexcept { return U_.rows(); }
  /// Dimension d - k of the coordinate space.
  Eigen::Index coord_dim() const noexcept { return U_.cols(); }

  Eigen::VectorXd forward(const Direction& v) const;
  Direction inverse(const Eigen::VectorXd& beta) const;

  /// Gradient in chart coordinates of f(inverse(beta)), given the ambient
  /// gradient of f at inverse(beta).
  Eigen::VectorXd pullback(const Eigen::VectorXd& beta,
                           const Eigen::VectorXd& ambient_grad) const;

 private:
  friend Chart build_chart(const Direction& v0, const DirectionList& constraints);
  Chart(Direction v0, Eigen::MatrixXd U, DirectionList constraints)
      : v0_(std::move(v0)), U_(std::move(U)), constraints_(std::move(constraints)) {}

  Direction v0_;
  Eigen::MatrixXd U_;
  DirectionList constraints_;
};

/// Builds the chart centered at v0. Throws InvalidFrame when v0 and the
/// constraints are not orthonormal within 1e-8, DimensionError when the
/// coordinate space would be empty.
Chart build_chart(const Direction& v0, const DirectionList& constraints);

inline Eigen::VectorXd chart_forward(const Chart& c, const Direction& v) { return c.forward(v); }
inline Direction chart_inverse(const Chart& c, const Eigen::VectorXd& beta) {
  return c.inverse(beta);
}

/// Orthonormal basis (as columns) of the orthogonal complement of the columns
/// of `frame`, which must be orthonormal. Modified Gram-Schmidt over the
/// canonical basis in index order; candidates whose residual norm falls below
/// 1e-8 are skipped.
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& frame);

/// Stacks directions as the columns of a d x k matrix.
Eigen::MatrixXd as_columns(const DirectionList& dirs, Eigen::Index dim);

/// Removes the components along the constraints and renormalizes.
Eigen::VectorXd project_out(const Eigen::VectorXd& v, const DirectionList& constraints);

}  // namespace modalpca::manifold
