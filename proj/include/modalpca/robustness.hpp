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
#include <functional>
#include <optional>
#include <vector>

#include "modalpca/estimator.hpp"
#include "modalpca/grid.hpp"
#include "modalpca/synth.hpp"
#include "modalpca/types.hpp"

/// Robustness diagnostics for the mode-centered problem
///
///   w_k = argmax_{|w| = 1, w'w_l = 0 (l < k)}  E_F phi_h(w'x),
///
/// i.e. the modal-PCA objective with the mode pinned at the origin and a
/// fixed bandwidth.
namespace modalpca::robustness {

/// Subtracts the model center (requires a full set of d components).
DataMatrix mode_center(const DataMatrix& data, const estimator::MpcaModel& model);

/// Polishes `start` into stationary points of the mode-centered problem at
/// bandwidth h, extracting components sequentially. Returns the first `k`.
DirectionList stationary_directions(const DataMatrix& centered, const DirectionList& start,
                                    Bandwidth h, int k);

// --- analytic influence function -------------------------------------------------

struct InfluenceResult {
  Eigen::VectorXd u;
  int k;
  Eigen::VectorXd if_vector;
  double norm;
  /// |(A_k B_k - C_k) IF - rhs| / |rhs| of the final linear solve.
  double relative_residual;
};

/// Influence of a point mass at u on w_k under the empirical measure of
/// `centered`:
///
///   IF_k = (A_k B_k - C_k)^{-1} [A_k d_k + sum_{l<k} C_{l|k} IF_l]
///
/// with A_k = I - sum_{l<=k} w_l w_l', psi(w) = h^-2 E phi'(w'x/h) x,
/// B_k = h^-3 E phi''(w_k'x/h) x x', C_k = (w_k'psi_k) I + w_k psi_k',
/// d_k = psi_k - h^-2 phi'(w_k'u/h) u, and the coupling
/// C_{l|k} = (w_l'psi_k) I + w_l psi_k'. `directions` must hold stationary
/// points (see stationary_directions). Throws SingularSystem when the
/// condition number of A_k B_k - C_k exceeds 1e12.
InfluenceResult influence_mpca(const DataMatrix& centered, const DirectionList& directions,
                               const Eigen::VectorXd& u, int k, Bandwidth h);

/// Model overload: directions are first polished with stationary_directions.
InfluenceResult influence_mpca(const DataMatrix& centered, const estimator::MpcaModel& model,
                               const Eigen::VectorXd& u, int k, Bandwidth h);

// --- contamination oracle --------------------------------------------------------

struct WeightedSample {
  DataMatrix points;
  Eigen::VectorXd weights;  // sums to one
};

/// Estimator under a weighted sample; returns one direction.
using Refit = std::function<Eigen::VectorXd(const WeightedSample&)>;

/// [T((1 - eps) F + eps delta_u) - T(F)] / eps, with the contaminated
/// direction sign-aligned to the clean one. eps must lie in (0, 0.1].
Eigen::VectorXd influence_numeric(const DataMatrix& data, const Refit& refit,
                                  const Eigen::VectorXd& u, double epsilon);

/// Mode-centered modal PCA at fixed bandwidth, component k, warm-started
/// from `warm` (at least k directions).
Refit mpca_refit(Bandwidth h, int k, DirectionList warm);

/// Classical PCA minor component: eigenvector of the smallest eigenvalue of
/// the weighted covariance.
Refit cpca_minor_refit();

struct InfluenceGridRow {
  double u1;
  double u2;
  double norm;
};

/// Evaluates `norm_at(u)` on a resolution x resolution grid over
/// [lo, hi]^2 (a single point at the center when resolution is 1).
std::vector<InfluenceGridRow> influence_grid(double lo, double hi, int resolution,
                                             const std::function<double(const Eigen::Vector2d&)>& norm_at);

// --- breakdown bound -------------------------------------------------------------

struct LbbpSearch {
  int initial_restarts = 5;
  int restart_step = 5;
  int max_restarts = 40;
  /// Restart counts are increased until consecutive best values agree
  /// within agree_tol * max(1, value).
  double agree_tol = 1e-3;
  int mm_iterations = 200;
  std::uint64_t seed = 0;
  grid::GridConfig grid;
};

struct LbbpReport {
  int a;
  double M_a;
  double M_a_star;
  int b_star;
  double bound;
  Bandwidth h;
  Direction w1;
  int restarts;
  /// The constrained search beat w1 itself; the bound is reported as 0.
  bool search_exceeded_w1;
};

struct BoundValue {
  int b_star;
  double bound;
};

/// b* = max(0, ceil(M_a - M_a*) - 1) and b* / (a + b*).
BoundValue lbbp_bound(int a, double M_a, double M_a_star);

/// M_a = sum exp(-(w'x/h)^2 / 2), i.e. h sqrt(2 pi) sum phi_h(w'x).
double concentration(const DataMatrix& centered, const Direction& w, Bandwidth h);

/// Lower bound of the angular breakdown point of MC_1. M_a* is the best value
/// found by a restarted constrained search (a lower estimate of the supremum).
LbbpReport lbbp(const DataMatrix& centered, const estimator::MpcaModel& model, Bandwidth h,
                const LbbpSearch& search = {});

// --- breakdown experiment ----------------------------------------------------------

struct BreakdownConfig {
  synth::ScenarioSpec scenario;  // outlier_fraction and seed are overridden per cell
  std::vector<double> alphas;
  std::vector<std::uint64_t> seeds;
  estimator::FitConfig fit;
  unsigned threads = 0;  // 0 = parallel::thread_count()
};

struct BreakdownRow {
  double alpha;
  std::uint64_t seed;
  double cosine;
};

/// |cos| between MC_1 fitted on the clean sample and on the sample with a
/// fraction alpha of rows replaced by outliers, for every (alpha, seed).
std::vector<BreakdownRow> breakdown_experiment(const BreakdownConfig& cfg);

/// Median cosine per alpha, in increasing alpha order.
std::vector<std::pair<double, double>> median_cosine(const std::vector<BreakdownRow>& rows);

/// Smallest alpha whose median cosine falls below `threshold`.
std::optional<double> breakdown_fraction(const std::vector<BreakdownRow>& rows,
                                         double threshold = 0.1);

// --- sigma_z calibration ------------------------------------------------------------

struct Calibration {
  double sigma_z;
  LbbpReport report;
  int evaluations;
};

/// LBBP of the clean lbbp-3d sample for one sigma_z: full-rank fit, mode
/// centering, bound at the bandwidth of MC_1.
LbbpReport lbbp_for_sigma(const synth::ScenarioSpec& scenario, double sigma_z,
                          const estimator::FitConfig& fit, const LbbpSearch& search);

/// Bisection on sigma_z in [lo, hi] for a target bound (the bound decreases
/// as sigma_z grows). Stops when |bound - target| < tol or after max_iter
/// halvings, returning the closest evaluation.
Calibration calibrate_sigma_z(double target, const synth::ScenarioSpec& scenario,
                              const estimator::FitConfig& fit, const LbbpSearch& search,
                              double lo = 0.01, double hi = 0.6, int max_iter = 25,
                              double tol = 0.002);

}  // namespace modalpca::robustness
