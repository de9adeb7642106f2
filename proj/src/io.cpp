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

#include "modalpca/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace modalpca::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    out.emplace_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

double real_or_nan(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json real_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

LabeledDataset parse_csv(std::istream& in, const CsvOptions& options) {
  LabeledDataset out;
  std::string line;
  std::optional<std::size_t> label_idx;
  std::size_t width = 0;

  std::vector<std::string> header;
  if (options.header) {
    while (std::getline(in, line) && trim(line).empty()) {
    }
    if (trim(line).empty()) throw StructureError("missing header row");
    header = split(line, options.delimiter);
    width = header.size();
  }
  if (options.label_column) {
    const std::string& name = *options.label_column;
    if (options.header) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) label_idx = i;
      }
      if (!label_idx) throw StructureError("label column '" + name + "' not found in header");
    } else if (name != "last") {
      std::size_t idx = 0;
      const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), idx);
      if (ec != std::errc() || ptr != name.data() + name.size() || idx == 0) {
        throw StructureError("label column must be a 1-based number or 'last' without a header");
      }
      label_idx = idx - 1;
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<bool> mask;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split(line, options.delimiter);
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw StructureError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                           " cells, expected " + std::to_string(width));
    }
    if (options.label_column && !label_idx) label_idx = width - 1;
    if (label_idx && *label_idx >= width) throw StructureError("label column out of range");

    std::vector<double> values;
    values.reserve(width);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      if (label_idx && c == *label_idx) {
        if (cell == "1" || cell == "outlier") {
          mask.push_back(false);
        } else if (cell == "0" || cell == "inlier") {
          mask.push_back(true);
        } else {
          throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(c + 1) +
                               ": bad label '" + cell + "'",
                           row, c + 1);
        }
        continue;
      }
      const auto v = parse_real(cell);
      if (!v || !std::isfinite(*v)) {
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(c + 1) +
                             ": not a finite real '" + cell + "'",
                         row, c + 1);
      }
      values.push_back(*v);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw StructureError("no data rows");

  const auto cols = static_cast<Eigen::Index>(rows.front().size());
  if (cols == 0) throw StructureError("no numeric columns");
  out.data.resize(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out.data(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  if (label_idx) out.inlier_mask = std::move(mask);
  if (options.header) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (!label_idx || i != *label_idx) names.push_back(header[i]);
    }
    out.column_names = std::move(names);
  }
  return out;
}

LabeledDataset read_csv(const std::string& path, const CsvOptions& options) {
  auto in = open_in(path);
  return parse_csv(in, options);
}

void write_dataset(std::ostream& out, const DataMatrix& data, const std::vector<bool>* inlier_mask) {
  if (inlier_mask && inlier_mask->size() != static_cast<std::size_t>(data.rows())) {
    throw DimensionError("mask length differs from the number of rows");
  }
  for (Eigen::Index j = 0; j < data.cols(); ++j) out << (j ? "," : "") << 'x' << j + 1;
  if (inlier_mask) out << ",label";
  out << '\n';
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) out << (j ? "," : "") << format_real(data(i, j));
    if (inlier_mask) out << ',' << ((*inlier_mask)[static_cast<std::size_t>(i)] ? "inlier" : "outlier");
    out << '\n';
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_dataset(const std::string& path, const DataMatrix& data,
                   const std::vector<bool>* inlier_mask) {
  std::ostringstream s;
  write_dataset(s, data, inlier_mask);
  write_text(path, s.str());
}

std::string model_to_json(const estimator::MpcaModel& model) {
  json j;
  j["version"] = kModelVersion;
  j["dim"] = model.dim;
  j["n_samples"] = model.n_samples;
  json bandwidths = json::array();
  json components = json::array();
  for (const auto& c : model.components) {
    bandwidths.push_back(c.bandwidth.value());
    json dir = json::array();
    for (Eigen::Index i = 0; i < c.direction.dim(); ++i) dir.push_back(c.direction[i]);
    components.push_back({{"index", c.index},
                          {"mode", real_json(c.mode)},
                          {"objective", real_json(c.objective)},
                          {"direction", dir},
                          {"iterations", c.iterations},
                          {"converged", c.converged}});
  }
  j["bandwidths"] = bandwidths;
  j["components"] = components;
  json center = json::array();
  for (Eigen::Index i = 0; i < model.center.size(); ++i) center.push_back(model.center(i));
  j["center"] = center;
  return j.dump(2) + "\n";
}

estimator::MpcaModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object()) throw FormatError("model file must hold a JSON object");
    if (!j.contains("version") || j["version"] != kModelVersion) {
      throw FormatError(std::string("model version must be '") + kModelVersion + "'");
    }
    if (!j.contains("components") || !j["components"].is_array()) {
      throw FormatError("model file has no \"components\" array");
    }
    estimator::MpcaModel m;
    const auto& comps = j["components"];
    m.dim = j.contains("dim") ? j["dim"].get<Eigen::Index>()
            : comps.empty()   ? 0
                              : static_cast<Eigen::Index>(comps[0].at("direction").size());
    m.n_samples = j.value("n_samples", Eigen::Index{0});
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const auto& c = comps[k];
      const auto dir = c.at("direction").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(dir.size()) != m.dim) {
        throw FormatError("component direction length differs from dim");
      }
      double h = 1.0;
      if (j.contains("bandwidths") && k < j["bandwidths"].size()) h = j["bandwidths"][k].get<double>();
      m.components.push_back(
          {c.value("index", static_cast<int>(k) + 1),
           Direction::normalized(Eigen::Map<const Eigen::VectorXd>(dir.data(), m.dim)),
           real_or_nan(c.at("mode")), Bandwidth(h),
           c.contains("objective") ? real_or_nan(c["objective"])
                                   : std::numeric_limits<double>::quiet_NaN(),
           c.value("iterations", 0), c.value("converged", true)});
    }
    if (j.contains("center")) {
      const auto center = j["center"].get<std::vector<double>>();
      if (static_cast<Eigen::Index>(center.size()) != m.dim) {
        throw FormatError("center length differs from dim");
      }
      m.center = Eigen::Map<const Eigen::VectorXd>(center.data(), m.dim);
    } else {
      m.center = Eigen::VectorXd::Zero(m.dim);
      for (const auto& c : m.components) m.center += c.mode * c.direction.vec();
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

void write_model(const estimator::MpcaModel& model, const std::string& path) {
  write_text(path, model_to_json(model));
}

estimator::MpcaModel read_model(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return model_from_json(s.str());
}

baseline::SubspaceBasis read_basis(const std::string& path) {
  return baseline::SubspaceBasis(read_csv(path).data);
}

void write_basis(std::ostream& out, const Eigen::MatrixXd& basis) {
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    for (Eigen::Index j = 0; j < basis.cols(); ++j) out << (j ? "," : "") << format_real(basis(i, j));
    out << '\n';
  }
}

void write_influence_csv(std::ostream& out, const std::vector<robustness::InfluenceGridRow>& rows) {
  out << "u1,u2,norm\n";
  for (const auto& r : rows) {
    out << format_real(r.u1) << ',' << format_real(r.u2) << ',' << format_real(r.norm) << '\n';
  }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "method,epsilon,n,seed,specdist\n";
  for (const auto& r : rows) {
    out << r.method << ',' << format_real(r.epsilon) << ',' << r.n << ',' << r.seed << ','
        << format_real(r.specdist) << '\n';
  }
}

void write_breakdown_csv(std::ostream& out, const std::vector<robustness::BreakdownRow>& rows) {
  out << "alpha,seed,cosine\n";
  for (const auto& r : rows) {
    out << format_real(r.alpha) << ',' << r.seed << ',' << format_real(r.cosine) << '\n';
  }
}

void write_lbbp_csv(std::ostream& out, const std::vector<robustness::LbbpReport>& reports) {
  out << "a,M_a,M_a_star,b_star,bound\n";
  for (const auto& r : reports) {
    out << r.a << ',' << format_real(r.M_a) << ',' << format_real(r.M_a_star) << ',' << r.b_star
        << ',' << format_real(r.bound) << '\n';
  }
}

}  // namespace modalpca::io
