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

#include "modalpca/baseline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace modalpca::baseline {

SubspaceBasis::SubspaceBasis(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.cols() < 1 || m_.rows() < m_.cols()) throw InvalidBasis("basis must be d x p with 1 <= p <= d");
  if (!m_.allFinite()) throw InvalidBasis("basis contains non-finite entries");
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m_);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > 1e-10 * s(0))) throw InvalidBasis("basis columns are linearly dependent");
}

Eigen::MatrixXd SubspaceBasis::projector() const {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m_);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m_.rows(), m_.cols());
  return q * q.transpose();
}

Eigen::MatrixXd covariance(const DataMatrix& data) {
  if (data.rows() < 2) throw DegenerateSample("covariance needs at least two rows");
  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(data.rows() - 1);
}

CpcaResult cpca_fit(const DataMatrix& data, int p) {
  if (p < 1 || p > data.cols()) throw DimensionError("p must lie in [1, d]");
  const Eigen::MatrixXd cov = covariance(data);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw DegenerateSample("covariance eigensolver failed");

  const Eigen::Index d = data.cols();
  Eigen::VectorXd values(d);
  Eigen::MatrixXd vectors(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    // Eigen sorts ascending
    values(j) = std::max(0.0, eig.eigenvalues()(d - 1 - j));
    vectors.col(j) = Direction::normalized(eig.eigenvectors().col(d - 1 - j)).canonical().vec();
  }
  return {SubspaceBasis(vectors.leftCols(p)), values, vectors, data.colwise().mean().transpose()};
}

double specdist(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.dim() != b.dim()) throw InvalidBasis("bases live in different dimensions");
  const Eigen::MatrixXd diff = a.projector() - b.projector();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(diff, Eigen::EigenvaluesOnly);
  const double s = eig.eigenvalues().cwiseAbs().maxCoeff();
  return std::asin(std::clamp(s, 0.0, 1.0));
}

int dimension_95(std::span<const double> eigenvalues) {
  double total = 0.0;
  for (double v : eigenvalues) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("eigenvalues must be finite and non-negative");
    total += v;
  }
  if (!(total > 0.0)) throw DegenerateSample("all eigenvalues are zero");
  double partial = 0.0;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    partial += eigenvalues[k];
    if (partial >= 0.95 * total) return static_cast<int>(k + 1);
  }
  return static_cast<int>(eigenvalues.size());
}

}  // namespace modalpca::baseline
