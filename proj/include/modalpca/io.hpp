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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modalpca/baseline.hpp"
#include "modalpca/estimator.hpp"
#include "modalpca/robustness.hpp"
#include "modalpca/types.hpp"

namespace modalpca::io {

struct LabeledDataset {
  DataMatrix data;
  std::optional<std::vector<bool>> inlier_mask;
  std::optional<std::vector<std::string>> column_names;
};

struct CsvOptions {
  bool header = false;
  /// Header name of the label column. Without a header, a 1-based column
  /// number or "last".
  std::optional<std::string> label_column;
  char delimiter = ',';
};

/// Parses decimal reals. Labels are "0"/"1" or "inlier"/"outlier" (1 and
/// "outlier" mark outliers). Blank lines are skipped. ParseError carries
/// the 1-based data row (header excluded) and file column.
LabeledDataset read_csv(const std::string& path, const CsvOptions& options = {});
LabeledDataset parse_csv(std::istream& in, const CsvOptions& options = {});

/// Header x1..xd, plus a trailing "label" column (inlier/outlier) with a mask.
void write_dataset(std::ostream& out, const DataMatrix& data,
                   const std::vector<bool>* inlier_mask = nullptr);
void write_dataset(const std::string& path, const DataMatrix& data,
                   const std::vector<bool>* inlier_mask = nullptr);

inline constexpr const char* kModelVersion = "modalpca-model/1";

/// JSON: {version, dim, n_samples, bandwidths[], components[{index, mode,
/// objective, direction[], iterations, converged}], center[]}.
std::string model_to_json(const estimator::MpcaModel& model);
estimator::MpcaModel model_from_json(const std::string& text);
void write_model(const estimator::MpcaModel& model, const std::string& path);
estimator::MpcaModel read_model(const std::string& path);

/// d x p basis: one row per coordinate, no header.
baseline::SubspaceBasis read_basis(const std::string& path);
void write_basis(std::ostream& out, const Eigen::MatrixXd& basis);

struct BenchRow {
  std::string method;
  double epsilon;
  int n;
  std::uint64_t seed;
  double specdist;
};

void write_influence_csv(std::ostream& out, const std::vector<robustness::InfluenceGridRow>& rows);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_breakdown_csv(std::ostream& out, const std::vector<robustness::BreakdownRow>& rows);
void write_lbbp_csv(std::ostream& out, const std::vector<robustness::LbbpReport>& reports);

/// "%.17g", as used by every writer.
std::string format_real(double x);

/// Writes `content` to path, creating nothing else; throws Error on failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace modalpca::io
