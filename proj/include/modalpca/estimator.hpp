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
#include <optional>
#include <vector>

#include "modalpca/grid.hpp"
#include "modalpca/types.hpp"

namespace modalpca::estimator {

/// One minor component: the direction whose projections have the highest
/// kernel density at their mode, under orthogonality to earlier components.
struct ModalComponent {
  int index;  // 1-based
  Direction direction;
  double mode;
  Bandwidth bandwidth;
  double objective;  // (1/N) sum phi_h(mode - direction'x_i)
  int iterations;
  bool converged;
};

/// Minor components in extraction order (MC_1 first).
struct MpcaModel {
  std::vector<ModalComponent> components;
  Eigen::Index dim = 0;
  Eigen::Index n_samples = 0;
  /// sum_k mode_k * direction_k. Exact location of the joint mode when all d
  /// components were extracted, a partial reconstruction otherwise.
  Eigen::VectorXd center;

  DirectionList directions() const;
  /// d x r matrix of minor directions.
  Eigen::MatrixXd minor_basis() const;
  /// Orthogonal complement of the minor directions (requires r < d).
  Eigen::MatrixXd principal_basis() const;
  /// With r = d: the last p extracted directions.
  Eigen::MatrixXd principal_basis(int p) const;
};

struct InnerConfig {
  double tol = 1e-8;
  /// Defaults to 100 * (number of chart coordinates).
  std::optional<int> max_iter;
};

struct FitConfig {
  int n_components = 1;
  grid::GridConfig grid;
  double outer_tol = 1e-7;
  int max_outer = 200;
  InnerConfig inner;
  /// Multiplier on the MAD inside the bandwidth rule (1 = raw MAD).
  double mad_scale = 1.0;
  /// Kept for bookkeeping; the fit itself draws no random numbers.
  std::uint64_t seed = 0;

  void validate(Eigen::Index dim) const;
};

/// Objective evaluations recorded during a fit. Each outer iteration opens a
/// segment with a freshly selected bandwidth.
struct TraceStep {
  enum class Kind { segment_start, mode_step, direction_step };
  int component;
  int outer;
  Kind kind;
  double bandwidth;
  double objective;
};
using FitTrace = std::vector<TraceStep>;

/// (1/N) sum phi_h(m - v'x_i).
double objective(const DataMatrix& data, double m, const Direction& v, Bandwidth h);

struct DirectionUpdate {
  Direction direction;
  double relaxed_before;  // G(v_curr)
  double relaxed_after;   // G(candidate)
  bool accepted;
  int inner_iterations;
};

/// One minorize-maximize step for the direction: with weights
/// q_i proportional to phi_h(m - v_curr'x_i), minimize
///   G(v) = sum q_i (m - v'x_i)^2
/// over the constrained sphere, in the chart centered at v_curr, by conjugate
/// gradient. The candidate is kept only if it strictly raises the objective.
DirectionUpdate weighted_direction_update_detail(const DataMatrix& data, double m,
                                                 const Direction& v_curr,
                                                 const DirectionList& constraints, Bandwidth h,
                                                 const InnerConfig& inner = {});

inline Direction weighted_direction_update(const DataMatrix& data, double m,
                                           const Direction& v_curr,
                                           const DirectionList& constraints, Bandwidth h,
                                           const InnerConfig& inner = {}) {
  return weighted_direction_update_detail(data, m, v_curr, constraints, h, inner).direction;
}

/// Sequential extraction of MC_1 ... MC_r.
MpcaModel fit(const DataMatrix& data, const FitConfig& cfg, FitTrace* trace = nullptr);

/// Direct maximization of the weighted density sum_i w_i phi_h(m - v'x_i) over
/// the constrained sphere at fixed (m, h), by conjugate gradient in charts
/// recentered at the current iterate. Used where the stationary point itself
/// matters (influence functions, breakdown bounds).
Direction maximize_density(const DataMatrix& points, const Eigen::VectorXd& weights, double m,
                           Bandwidth h, const Direction& start,
                           const DirectionList& constraints, double grad_tol = 1e-12);

}  // namespace modalpca::estimator
