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

#include "modalpca/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "modalpca/kernel.hpp"
#include "modalpca/manifold.hpp"
#include "modalpca/parallel.hpp"
#include "modalpca/rng.hpp"

namespace modalpca::robustness {

namespace {

Eigen::VectorXd uniform_weights(Eigen::Index n) {
  return Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
}

// Sequential fixed-h extraction with the mode pinned at zero.
DirectionList polish(const DataMatrix& points, const Eigen::VectorXd& weights,
                     const DirectionList& start, Bandwidth h, int k) {
  if (k < 1 || static_cast<int>(start.size()) < k) {
    throw InvalidArgument("need at least k starting directions");
  }
  DirectionList out;
  out.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) {
    const Direction& s = start[static_cast<std::size_t>(l)];
    Direction w = estimator::maximize_density(points, weights, 0.0, h, s, out);
    if (w.dot(s) < 0.0) w = w.flipped();
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

DataMatrix mode_center(const DataMatrix& data, const estimator::MpcaModel& model) {
  if (static_cast<Eigen::Index>(model.components.size()) != model.dim || model.dim != data.cols()) {
    throw DimensionError("mode centering needs a model with all d components");
  }
  return data.rowwise() - model.center.transpose();
}

DirectionList stationary_directions(const DataMatrix& centered, const DirectionList& start,
                                    Bandwidth h, int k) {
  return polish(centered, uniform_weights(centered.rows()), start, h, k);
}

InfluenceResult influence_mpca(const DataMatrix& centered, const DirectionList& directions,
                               const Eigen::VectorXd& u, int k, Bandwidth h) {
  const Eigen::Index d = centered.cols();
  if (k < 1 || static_cast<int>(directions.size()) < k) {
    throw InvalidArgument("k must lie in [1, number of directions]");
  }
  if (u.size() != d) throw DimensionError("contamination point has the wrong dimension");
  if (centered.rows() < 2) throw DegenerateSample("need at least two observations");
  for (int l = 0; l < k; ++l) {
    if (directions[static_cast<std::size_t>(l)].dim() != d) {
      throw DimensionError("direction dimension mismatch");
    }
  }

  const double hv = h.value();
  const double n = static_cast<double>(centered.rows());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);

  std::vector<Eigen::VectorXd> ifs;
  Eigen::MatrixXd A = I;
  double residual = 0.0;
  for (int l = 0; l < k; ++l) {
    const Eigen::VectorXd& w = directions[static_cast<std::size_t>(l)].vec();
    A -= w * w.transpose();

    const Eigen::ArrayXd z = (centered * w).array() / hv;
    Eigen::ArrayXd d1(z.size());
    Eigen::ArrayXd d2(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const auto der = kernel::derivatives(z(i));
      d1(i) = der.d1;
      d2(i) = der.d2;
    }
    const Eigen::VectorXd psi = centered.transpose() * d1.matrix() / (n * hv * hv);
    const Eigen::MatrixXd B =
        centered.transpose() * (centered.array().colwise() * d2).matrix() / (n * hv * hv * hv);
    const Eigen::MatrixXd C = w.dot(psi) * I + w * psi.transpose();
    const Eigen::VectorXd dk = psi - kernel::derivatives(w.dot(u) / hv).d1 / (hv * hv) * u;

    Eigen::VectorXd rhs = A * dk;
    for (int j = 0; j < l; ++j) {
      const Eigen::VectorXd& wj = directions[static_cast<std::size_t>(j)].vec();
      rhs += (wj.dot(psi) * I + wj * psi.transpose()) * ifs[static_cast<std::size_t>(j)];
    }

    const Eigen::MatrixXd M = A * B - C;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin > 1e12) {
      throw SingularSystem("influence system is singular (condition number above 1e12)");
    }
    const Eigen::VectorXd x = M.fullPivLu().solve(rhs);
    const double scale = std::max(rhs.norm(), std::numeric_limits<double>::min());
    residual = (M * x - rhs).norm() / scale;
    ifs.push_back(x);
  }

  const Eigen::VectorXd& out = ifs.back();
  return {u, k, out, out.norm(), residual};
}

InfluenceResult influence_mpca(const DataMatrix& centered, const estimator::MpcaModel& model,
                               const Eigen::VectorXd& u, int k, Bandwidth h) {
  if (k < 1 || k > static_cast<int>(model.components.size())) {
    throw InvalidArgument("k must lie in [1, number of fitted components]");
  }
  return influence_mpca(centered, stationary_directions(centered, model.directions(), h, k), u,
                        k, h);
}

Eigen::VectorXd influence_numeric(const DataMatrix& data, const Refit& refit,
                                  const Eigen::VectorXd& u, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) {
    throw InvalidArgument("epsilon must lie in (0, 0.1]");
  }
  if (u.size() != data.cols()) throw DimensionError("contamination point has the wrong dimension");
  const Eigen::Index a = data.rows();

  const Eigen::VectorXd clean = refit({data, uniform_weights(a)});

  WeightedSample cont{DataMatrix(a + 1, data.cols()), Eigen::VectorXd(a + 1)};
  cont.points.topRows(a) = data;
  cont.points.row(a) = u.transpose();
  cont.weights.head(a).setConstant((1.0 - epsilon) / static_cast<double>(a));
  cont.weights(a) = epsilon;
  Eigen::VectorXd moved = refit(cont);
  if (moved.dot(clean) < 0.0) moved = -moved;
  return (moved - clean) / epsilon;
}

Refit mpca_refit(Bandwidth h, int k, DirectionList warm) {
  if (k < 1 || static_cast<int>(warm.size()) < k) {
    throw InvalidArgument("need at least k warm-start directions");
  }
  return [h, k, warm = std::move(warm)](const WeightedSample& s) {
    return polish(s.points, s.weights, warm, h, k).back().vec();
  };
}

Refit cpca_minor_refit() {
  return [](const WeightedSample& s) {
    const double total = s.weights.sum();
    const Eigen::VectorXd mean = s.points.transpose() * s.weights / total;
    const DataMatrix c = s.points.rowwise() - mean.transpose();
    const Eigen::MatrixXd cov =
        c.transpose() * (c.array().colwise() * s.weights.array()).matrix() / total;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw OptimizationFailure("eigendecomposition failed", Eigen::VectorXd());
    return Eigen::VectorXd(es.eigenvectors().col(0));
  };
}

std::vector<InfluenceGridRow> influence_grid(
    double lo, double hi, int resolution,
    const std::function<double(const Eigen::Vector2d&)>& norm_at) {
  if (resolution < 1) throw InvalidArgument("grid resolution must be positive");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw InvalidArgument("grid range needs finite lo < hi");
  }
  std::vector<double> ticks(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    ticks[static_cast<std::size_t>(i)] =
        resolution == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (resolution - 1.0);
  }
  std::vector<InfluenceGridRow> rows;
  rows.reserve(ticks.size() * ticks.size());
  for (double u1 : ticks) {
    for (double u2 : ticks) rows.push_back({u1, u2, norm_at(Eigen::Vector2d(u1, u2))});
  }
  return rows;
}

BoundValue lbbp_bound(int a, double M_a, double M_a_star) {
  if (a < 1) throw InvalidArgument("sample size must be positive");
  const int b = std::max(0, static_cast<int>(std::ceil(M_a - M_a_star)) - 1);
  return {b, static_cast<double>(b) / (a + b)};
}

double concentration(const DataMatrix& centered, const Direction& w, Bandwidth h) {
  if (w.dim() != centered.cols()) throw DimensionError("direction dimension mismatch");
  const Eigen::ArrayXd z = (centered * w.vec()).array() / h.value();
  return (-0.5 * z.square()).exp().sum();
}

LbbpReport lbbp(const DataMatrix& centered, const estimator::MpcaModel& model, Bandwidth h,
                const LbbpSearch& search) {
  const Eigen::Index d = centered.cols();
  if (d < 2) throw DimensionError("breakdown bound needs d >= 2");
  if (model.components.empty()) throw InvalidArgument("model has no components");
  if (model.dim != d) throw DimensionError("model dimension mismatch");
  if (search.initial_restarts < 1 || search.restart_step < 1 ||
      search.max_restarts < search.initial_restarts) {
    throw ConfigError("invalid restart schedule");
  }
  search.grid.validate();

  const Direction w1 = model.components.front().direction;
  const int a = static_cast<int>(centered.rows());
  const double M_a = concentration(centered, w1, h);
  const DirectionList cons{w1};
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a);

  const double hv = h.value();
  const grid::DirectionScore score = [hv](std::span<const double> p) {
    double s = 0.0;
    for (double x : p) s += std::exp(-0.5 * (x / hv) * (x / hv));
    return s;
  };

  auto attempt = [&](int r) {
    Eigen::MatrixXd axes = Eigen::MatrixXd::Identity(d, d);
    if (r > 0) {
      Rng rng(stream_seed(search.seed, "lbbp-restart", static_cast<std::uint64_t>(r)));
      Eigen::MatrixXd g(d, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.normal();
      }
      axes = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    }
    Direction w = grid::grid_init_from(centered, cons, search.grid, score, axes);
    if (d > 2) {
      for (int it = 0; it < search.mm_iterations; ++it) {
        const auto step = estimator::weighted_direction_update_detail(centered, 0.0, w, cons, h);
        if (!step.accepted) break;
        w = step.direction;
      }
    }
    w = estimator::maximize_density(centered, ones, 0.0, h, w, cons);
    return concentration(centered, w, h);
  };

  double best = -std::numeric_limits<double>::infinity();
  int done = 0;
  double previous = best;
  int target = search.initial_restarts;
  for (;;) {
    for (; done < target; ++done) best = std::max(best, attempt(done));
    if (d == 2) break;  // a single admissible direction up to sign
    if (std::isfinite(previous) && best - previous <= search.agree_tol * std::max(1.0, best)) break;
    if (done >= search.max_restarts) break;
    previous = best;
    target = std::min(search.max_restarts, done + search.restart_step);
  }

  const bool exceeded = best > M_a;
  const BoundValue bv = lbbp_bound(a, M_a, best);
  return {a, M_a, best, bv.b_star, bv.bound, h, w1, done, exceeded};
}

std::vector<BreakdownRow> breakdown_experiment(const BreakdownConfig& cfg) {
  if (cfg.alphas.empty() || cfg.seeds.empty()) throw ConfigError("need alphas and seeds");
  for (double alpha : cfg.alphas) {
    if (!(alpha >= 0.0 && alpha <= 0.5)) throw ConfigError("alpha must lie in [0, 0.5]");
  }
  estimator::FitConfig fit = cfg.fit;
  fit.n_components = 1;
  const unsigned threads = cfg.threads ? cfg.threads : parallel::thread_count();

  const auto n_seeds = cfg.seeds.size();
  std::vector<Eigen::VectorXd> clean(n_seeds);
  parallel::for_each_index(
      n_seeds,
      [&](std::size_t s) {
        synth::ScenarioSpec spec = cfg.scenario;
        spec.seed = cfg.seeds[s];
        spec.outlier_fraction = 0.0;
        clean[s] = estimator::fit(synth::generate(spec).data, fit).components[0].direction.vec();
      },
      threads);

  const std::size_t cells = cfg.alphas.size() * n_seeds;
  std::vector<BreakdownRow> rows(cells);
  parallel::for_each_index(
      cells,
      [&](std::size_t c) {
        const std::size_t ai = c / n_seeds;
        const std::size_t si = c % n_seeds;
        synth::ScenarioSpec spec = cfg.scenario;
        spec.seed = cfg.seeds[si];
        spec.outlier_fraction = cfg.alphas[ai];
        const auto model = estimator::fit(synth::generate(spec).data, fit);
        const double cosine = std::abs(model.components[0].direction.vec().dot(clean[si]));
        rows[c] = {cfg.alphas[ai], cfg.seeds[si], std::min(1.0, cosine)};
      },
      threads);
  return rows;
}

std::vector<std::pair<double, double>> median_cosine(const std::vector<BreakdownRow>& rows) {
  std::map<double, std::vector<double>> by_alpha;
  for (const auto& r : rows) by_alpha[r.alpha].push_back(r.cosine);
  std::vector<std::pair<double, double>> out;
  for (const auto& [alpha, values] : by_alpha) out.emplace_back(alpha, kernel::median(values));
  return out;
}

std::optional<double> breakdown_fraction(const std::vector<BreakdownRow>& rows, double threshold) {
  for (const auto& [alpha, med] : median_cosine(rows)) {
    if (med < threshold) return alpha;
  }
  return std::nullopt;
}

LbbpReport lbbp_for_sigma(const synth::ScenarioSpec& scenario, double sigma_z,
                          const estimator::FitConfig& fit, const LbbpSearch& search) {
  synth::ScenarioSpec spec = scenario;
  spec.sigma_z = sigma_z;
  spec.outlier_fraction = 0.0;
  const auto sample = synth::generate(spec);
  estimator::FitConfig full = fit;
  full.n_components = static_cast<int>(sample.data.cols());
  const auto model = estimator::fit(sample.data, full);
  return lbbp(mode_center(sample.data, model), model, model.components[0].bandwidth, search);
}

Calibration calibrate_sigma_z(double target, const synth::ScenarioSpec& scenario,
                              const estimator::FitConfig& fit, const LbbpSearch& search,
                              double lo, double hi, int max_iter, double tol) {
  if (!(target > 0.0 && target < 0.5)) throw ConfigError("target bound must lie in (0, 0.5)");
  if (!(lo > 0.0 && lo < hi)) throw ConfigError("sigma_z bracket needs 0 < lo < hi");

  int evaluations = 0;
  std::optional<Calibration> best;
  auto eval = [&](double s) {
    LbbpReport r = lbbp_for_sigma(scenario, s, fit, search);
    ++evaluations;
    if (!best || std::abs(r.bound - target) < std::abs(best->report.bound - target)) {
      best = Calibration{s, r, 0};
    }
    return r.bound;
  };

  const double at_lo = eval(lo);
  const double at_hi = eval(hi);
  if (at_lo > target && at_hi < target) {
    for (int i = 0; i < max_iter && std::abs(best->report.bound - target) >= tol; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (eval(mid) > target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  best->evaluations = evaluations;
  return *best;
}

}  // namespace modalpca::robustness
