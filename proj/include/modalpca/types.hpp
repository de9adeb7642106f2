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

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "modalpca/error.hpp"

namespace modalpca {

/// n x d sample, one observation per row.
using DataMatrix = Eigen::MatrixXd;

/// Kernel smoothing scale. Always finite and strictly positive.
class Bandwidth {
 public:
  explicit Bandwidth(double h) : h_(h) {
    if (!std::isfinite(h) || h <= 0.0) {
      throw InvalidArgument("bandwidth must be finite and positive");
    }
  }
  double value() const noexcept { return h_; }

 private:
  double h_;
};

/// Unit vector in R^d.
class Direction {
 public:
  /// Wraps a vector that must already have unit norm (within tol).
  explicit Direction(Eigen::VectorXd v, double tol = 1e-10) : v_(std::move(v)) {
    const double norm = v_.norm();
    if (!v_.allFinite() || std::abs(norm - 1.0) > tol) {
      throw InvalidArgument("direction must have unit norm");
    }
    v_ /= norm;
  }

  /// Normalizes v. Rejects zero or non-finite input.
  static Direction normalized(const Eigen::VectorXd& v) {
    const double norm = v.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
      throw InvalidArgument("cannot normalize a zero or non-finite vector");
    }
    return Direction(v / norm, 1e-6);
  }

  static Direction axis(Eigen::Index dim, Eigen::Index i) {
    return Direction(Eigen::VectorXd::Unit(dim, i));
  }

  const Eigen::VectorXd& vec() const noexcept { return v_; }
  Eigen::Index dim() const noexcept { return v_.size(); }
  double operator[](Eigen::Index i) const { return v_(i); }
  double dot(const Direction& other) const { return v_.dot(other.v_); }

  Direction flipped() const { return Direction(-v_); }

  /// Sign convention: first coordinate with |x| > 1e-12 is non-negative.
  Direction canonical() const {
    for (Eigen::Index i = 0; i < v_.size(); ++i) {
      if (std::abs(v_(i)) > 1e-12) {
        return v_(i) < 0.0 ? flipped() : *this;
      }
    }
    return *this;
  }

 private:
  Eigen::VectorXd v_;
};

using DirectionList = std::vector<Direction>;

}  // namespace modalpca
