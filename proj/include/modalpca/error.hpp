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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace modalpca {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Sample too small or too concentrated for the requested statistic.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Chart center / constraints are not an orthonormal frame.
class InvalidFrame : public Error {
 public:
  using Error::Error;
};

/// Point too close to the excluded antipode of the chart center.
class ChartSingularity : public Error {
 public:
  using Error::Error;
};

/// Point is off the constrained sphere.
class InvalidPoint : public Error {
 public:
  using Error::Error;
};

/// Inner optimizer produced a non-finite value; carries the best iterate.
class OptimizationFailure : public Error {
 public:
  OptimizationFailure(const std::string& what, Eigen::VectorXd best)
      : Error(what), best_(std::move(best)) {}
  const Eigen::VectorXd& best_iterate() const noexcept { return best_; }

 private:
  Eigen::VectorXd best_;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class InvalidBasis : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV cell. Row and column are 1-based data coordinates.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what), row_(row), column_(column) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class StructureError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace modalpca
