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

#include "modalpca/manifold.hpp"

#include <cmath>

namespace modalpca::manifold {

namespace {

constexpr double kFrameTol = 1e-8;
constexpr double kPointTol = 1e-8;
constexpr double kSingularTol = 1e-10;

}  // namespace

Eigen::MatrixXd as_columns(const DirectionList& dirs, Eigen::Index dim) {
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    if (dirs[j].dim() != dim) throw DimensionError("direction dimension mismatch");
    m.col(static_cast<Eigen::Index>(j)) = dirs[j].vec();
  }
  return m;
}

Eigen::VectorXd project_out(const Eigen::VectorXd& v, const DirectionList& constraints) {
  Eigen::VectorXd r = v;
  // two passes keep the residual orthogonal to working precision
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& c : constraints) r -= c.vec().dot(r) * c.vec();
  }
  return r;
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& frame) {
  const Eigen::Index d = frame.rows();
  const Eigen::Index want = d - frame.cols();
  Eigen::MatrixXd basis(d, d);
  basis.leftCols(frame.cols()) = frame;
  Eigen::Index filled = frame.cols();
  for (Eigen::Index i = 0; i < d && filled < d; ++i) {
    Eigen::VectorXd r = Eigen::VectorXd::Unit(d, i);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < filled; ++j) r -= basis.col(j).dot(r) * basis.col(j);
    }
    const double norm = r.norm();
    if (norm < kFrameTol) continue;
    basis.col(filled++) = r / norm;
  }
  if (filled != d) throw InvalidFrame("frame is rank deficient");
  return basis.rightCols(want);
}

Chart build_chart(const Direction& v0, const DirectionList& constraints) {
  const Eigen::Index d = v0.dim();
  const auto k1 = static_cast<Eigen::Index>(constraints.size());
  if (k1 >= d - 1) throw DimensionError("chart coordinate space would be empty");

  Eigen::MatrixXd frame(d, k1 + 1);
  frame.leftCols(k1) = as_columns(constraints, d);
  frame.col(k1) = v0.vec();
  const Eigen::MatrixXd gram = frame.transpose() * frame;
  const double off = (gram - Eigen::MatrixXd::Identity(k1 + 1, k1 + 1)).cwiseAbs().maxCoeff();
  if (off > kFrameTol) throw InvalidFrame("chart center and constraints are not orthonormal");

  return Chart(v0, orthonormal_complement(frame), constraints);
}

Eigen::VectorXd Chart::forward(const Direction& v) const {
  if (v.dim() != dim()) throw DimensionError("point dimension mismatch");
  for (const auto& c : constraints_) {
    if (std::abs(c.dot(v)) > kPointTol) throw InvalidPoint("point violates a constraint");
  }
  const double denom = 1.0 + v0_.dot(v);
  if (denom < kSingularTol) throw ChartSingularity("point is the excluded antipode of the center");
  return U_.transpose() * v.vec() / denom;
}

Direction Chart::inverse(const Eigen::VectorXd& beta) const {
  if (beta.size() != coord_dim()) throw DimensionError("chart coordinate dimension mismatch");
  if (!beta.allFinite()) throw InvalidArgument("chart coordinates must be finite");
  const double norm = beta.norm();
  Eigen::VectorXd v;
  if (norm <= 1e4) {
    const double s = norm * norm;
    v = (2.0 * (U_ * beta) + (1.0 - s) * v0_.vec()) / (1.0 + s);
  } else {
    // divide through by |beta|^2 to avoid overflow
    const double t = (1.0 / norm) / norm;
    const Eigen::VectorXd unit = beta / norm;
    v = (2.0 * (U_ * unit) / norm + (t - 1.0) * v0_.vec()) / (t + 1.0);
  }
  return Direction(v / v.norm(), 1e-6);
}

Eigen::VectorXd Chart::pullback(const Eigen::VectorXd& beta,
                                const Eigen::VectorXd& ambient_grad) const {
  const double s = beta.squaredNorm();
  const Eigen::VectorXd v = inverse(beta).vec();
  const double along = (v0_.vec() + v).dot(ambient_grad);
  return (2.0 / (1.0 + s)) * (U_.transpose() * ambient_grad - along * beta);
}

}  // namespace modalpca::manifold
