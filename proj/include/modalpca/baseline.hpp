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

#include <Eigen/Core>

#include "modalpca/types.hpp"

namespace modalpca::baseline {

/// d x p matrix with linearly independent columns.
class SubspaceBasis {
 public:
  /// Throws InvalidBasis unless the smallest singular value exceeds
  /// 1e-10 times the largest.
  explicit SubspaceBasis(Eigen::MatrixXd m);

  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Eigen::Index rank() const noexcept { return m_.cols(); }
  /// Orthogonal projector B (B'B)^{-1} B'.
  Eigen::MatrixXd projector() const;

 private:
  Eigen::MatrixXd m_;
};

struct CpcaResult {
  SubspaceBasis basis;         // top-p eigenvectors, sign-canonical
  Eigen::VectorXd eigenvalues;  // all d, descending
  Eigen::MatrixXd eigenvectors; // all d columns, same order, sign-canonical
  Eigen::VectorXd mean;
};

/// Sample covariance (divisor n - 1) of the rows.
Eigen::MatrixXd covariance(const DataMatrix& data);

/// Classical PCA: eigen-decomposition of the sample covariance.
CpcaResult cpca_fit(const DataMatrix& data, int p);

/// Largest principal angle between the column spaces: arcsin of the spectral
/// norm of the projector difference, clamped to [0, pi/2].
double specdist(const SubspaceBasis& a, const SubspaceBasis& b);

/// Smallest k whose leading eigenvalues carry at least 95% of the total.
int dimension_95(std::span<const double> eigenvalues);

}  // namespace modalpca::baseline
