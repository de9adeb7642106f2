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

#include "modalpca/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "modalpca/kernel.hpp"
#include "modalpca/manifold.hpp"
#include "modalpca/mode.hpp"

namespace modalpca::grid {

namespace {

constexpr double kParallelSkip = 1e-8;
constexpr double kAdmissible = 1e-8;

bool all_rows_identical(const DataMatrix& x) {
  for (Eigen::Index i = 1; i < x.rows(); ++i) {
    if (x.row(i) != x.row(0)) return false;
  }
  return true;
}

}  // namespace

void GridConfig::validate() const {
  if (n_grid < 3) throw ConfigError("n_grid must be at least 3");
  if (n_cycles < 1) throw ConfigError("n_cycles must be at least 1");
  if (!std::isfinite(mad_scale) || mad_scale <= 0.0) {
    throw ConfigError("mad_scale must be finite and positive");
  }
}

DirectionScore make_score(const GridConfig& cfg) {
  switch (cfg.objective) {
    case GridObjective::mode_density:
      return [scale = cfg.mad_scale](std::span<const double> p) {
        const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
        if (*lo == *hi) return std::numeric_limits<double>::infinity();
        const Bandwidth h = kernel::terrell_bandwidth(p, scale);
        return mode::kde(p, mode::half_sample_mode(p), h);
      };
  }
  throw ConfigError("unknown grid objective");
}

AngleSearch search_angle(const DataMatrix& plane, const GridConfig& cfg,
                         const DirectionScore& score) {
  cfg.validate();
  if (plane.cols() != 2) throw DimensionError("angular search needs a two-column sample");
  if (plane.rows() < 2) throw DegenerateSample("angular search needs at least two rows");
  if (all_rows_identical(plane)) throw DegenerateSample("all rows are identical");

  const double pi = std::numbers::pi;
  const auto ng = static_cast<double>(cfg.n_grid);
  std::vector<double> proj(static_cast<std::size_t>(plane.rows()));
  auto evaluate = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (Eigen::Index i = 0; i < plane.rows(); ++i) {
      proj[static_cast<std::size_t>(i)] = c * plane(i, 0) + s * plane(i, 1);
    }
    return score(proj);
  };

  // the incumbent (theta = 0) survives a cycle only if it beats every grid point
  AngleSearch out{0.0, evaluate(0.0), {}, {}};
  double center = 0.0;
  for (int cycle = 0; cycle < cfg.n_cycles; ++cycle) {
    // cycle t covers [center - pi/2^(t+1), center + pi/2^(t+1)) with spacing pi/(2^t Ng)
    const double half_width = pi / std::ldexp(1.0, cycle + 1);
    const double spacing = pi / (std::ldexp(1.0, cycle) * ng);
    out.last_thetas.clear();
    out.last_scores.clear();
    double best_theta = center;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < cfg.n_grid; ++j) {
      const double theta = center - half_width + j * spacing;
      const double value = evaluate(theta);
      out.last_thetas.push_back(theta);
      out.last_scores.push_back(value);
      if (value > best_score) {
        best_score = value;
        best_theta = theta;
      }
    }
    if (best_score >= out.score) {
      center = best_theta;
      out.theta = best_theta;
      out.score = best_score;
    }
  }
  return out;
}

Direction grid_search_2d(const DataMatrix& plane, const GridConfig& cfg,
                         const DirectionScore& score) {
  const AngleSearch s = search_angle(plane, cfg, score);
  Eigen::Vector2d v(std::cos(s.theta), std::sin(s.theta));
  return Direction(Eigen::VectorXd(v)).canonical();
}

Direction grid_search_2d(const DataMatrix& plane, const GridConfig& cfg) {
  return grid_search_2d(plane, cfg, make_score(cfg));
}

Direction grid_init_from(const DataMatrix& data, const DirectionList& constraints,
                         const GridConfig& cfg, const DirectionScore& score,
                         const Eigen::MatrixXd& axes) {
  cfg.validate();
  const Eigen::Index d = data.cols();
  if (static_cast<Eigen::Index>(constraints.size()) >= d) {
    throw DimensionError("no admissible direction: constraints span the space");
  }
  if (axes.rows() != d || axes.cols() != d) throw DimensionError("axes must be d x d");
  if (data.rows() < 2) throw DegenerateSample("grid search needs at least two rows");
  if (all_rows_identical(data)) throw DegenerateSample("all rows are identical");

  std::vector<Eigen::VectorXd> candidates;
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd e = manifold::project_out(axes.col(i), constraints);
    const double norm = e.norm();
    if (norm > kAdmissible) candidates.push_back(e / norm);
  }
  if (candidates.empty()) throw DimensionError("no admissible axis in the constraint complement");

  Eigen::VectorXd current = candidates.front();
  DataMatrix plane(data.rows(), 2);
  for (const auto& e : candidates) {
    const double c = current.dot(e);
    if (std::abs(c) > 1.0 - kParallelSkip) continue;
    Eigen::VectorXd b = manifold::project_out(e - c * current, constraints);
    b.normalize();
    plane.col(0) = data * current;
    plane.col(1) = data * b;
    // every direction of a collapsed plane is equally (perfectly) concentrated
    if (all_rows_identical(plane)) continue;
    const AngleSearch s = search_angle(plane, cfg, score);
    current = std::cos(s.theta) * current + std::sin(s.theta) * b;
    current = manifold::project_out(current, constraints);
    current.normalize();
  }
  return Direction(current).canonical();
}

Direction grid_init(const DataMatrix& data, const DirectionList& constraints,
                    const GridConfig& cfg, const DirectionScore& score) {
  return grid_init_from(data, constraints, cfg, score,
                        Eigen::MatrixXd::Identity(data.cols(), data.cols()));
}

Direction grid_init(const DataMatrix& data, const DirectionList& constraints,
                    const GridConfig& cfg) {
  return grid_init(data, constraints, cfg, make_score(cfg));
}

}  // namespace modalpca::grid
