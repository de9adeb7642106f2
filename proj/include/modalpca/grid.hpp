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
#include <span>
#include <vector>

#include "modalpca/types.hpp"

namespace modalpca::grid {

enum class GridObjective {
  /// Half-sample mode of the projections, Terrell bandwidth, kernel density
  /// at that mode.
  mode_density,
};

struct GridConfig {
  int n_grid = 21;
  int n_cycles = 10;
  GridObjective objective = GridObjective::mode_density;
  /// Multiplier on the MAD inside the bandwidth rule.
  double mad_scale = 1.0;

  void validate() const;
};

/// Scores the projections of the sample onto one candidate direction; larger
/// is better.
using DirectionScore = std::function<double(std::span<const double> projections)>;

/// The score selected by cfg.objective. Constant projections score +inf.
DirectionScore make_score(const GridConfig& cfg);

struct AngleSearch {
  double theta;
  double score;
  /// Candidate angles and scores of the last cycle, in evaluation order.
  std::vector<double> last_thetas;
  std::vector<double> last_scores;
};

/// Cyclic angular grid search in a plane. `plane` is n x 2; candidates are
/// (cos t, sin t). The first cycle scans [-pi/2, pi/2); cycle t >= 1 scans
/// [best - pi/2^(t+1), best + pi/2^(t+1)). Ties among grid points keep the
/// first; the incumbent (angle 0 at the start) is kept through a cycle only if
/// it scores strictly higher than every grid point.
AngleSearch search_angle(const DataMatrix& plane, const GridConfig& cfg,
                         const DirectionScore& score);

/// grid_search_2d: the direction (cos t, sin t) found by search_angle.
Direction grid_search_2d(const DataMatrix& plane, const GridConfig& cfg);
Direction grid_search_2d(const DataMatrix& plane, const GridConfig& cfg,
                         const DirectionScore& score);

/// Cycles through the planes span{current, e_i} (e_i projected into the
/// complement of the constraints) for i = 1..d, running the 2-D search in
/// each. The result is orthogonal to every constraint and sign-canonical.
Direction grid_init(const DataMatrix& data, const DirectionList& constraints,
                    const GridConfig& cfg);
Direction grid_init(const DataMatrix& data, const DirectionList& constraints,
                    const GridConfig& cfg, const DirectionScore& score);

/// Same sweep with the canonical axes replaced by the columns of `axes`
/// (d x d, any basis of R^d); starts from the first admissible column.
Direction grid_init_from(const DataMatrix& data, const DirectionList& constraints,
                         const GridConfig& cfg, const DirectionScore& score,
                         const Eigen::MatrixXd& axes);

}  // namespace modalpca::grid
