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

#include "modalpca/estimator.hpp"

#include <cmath>
#include <vector>

#include "modalpca/kernel.hpp"
#include "modalpca/manifold.hpp"
#include "modalpca/mode.hpp"
#include "modalpca/optimize.hpp"

namespace modalpca::estimator {

namespace {

std::vector<double> project(const DataMatrix& data, const Eigen::VectorXd& v) {
  const Eigen::VectorXd p = data * v;
  return {p.data(), p.data() + p.size()};
}

double pick_mode(std::span<const double> proj, Bandwidth h, double warm) {
  const auto warm_fit = mode::newton_mode(proj, h, warm);
  const auto fresh_fit = mode::newton_mode(proj, h, mode::half_sample_mode(proj));
  return fresh_fit.density > warm_fit.density ? fresh_fit.m : warm_fit.m;
}

}  // namespace

// --- MpcaModel -------------------------------------------------------------

DirectionList MpcaModel::directions() const {
  DirectionList out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.direction);
  return out;
}

Eigen::MatrixXd MpcaModel::minor_basis() const {
  return manifold::as_columns(directions(), dim);
}

Eigen::MatrixXd MpcaModel::principal_basis() const {
  if (static_cast<Eigen::Index>(components.size()) >= dim) {
    throw DimensionError("principal complement is empty when all components are minor");
  }
  return manifold::orthonormal_complement(minor_basis());
}

Eigen::MatrixXd MpcaModel::principal_basis(int p) const {
  const auto r = static_cast<int>(components.size());
  if (r != dim) throw DimensionError("principal_basis(p) needs a full set of components");
  if (p < 1 || p > r) throw DimensionError("principal dimension out of range");
  return minor_basis().rightCols(p);
}

// --- configuration -----------------------------------------------------------

void FitConfig::validate(Eigen::Index dim) const {
  grid.validate();
  if (n_components < 1) throw ConfigError("n_components must be at least 1");
  if (n_components > dim) throw DimensionError("more components requested than dimensions");
  if (!(outer_tol > 0.0)) throw ConfigError("outer_tol must be positive");
  if (!(inner.tol > 0.0)) throw ConfigError("inner tol must be positive");
  if (max_outer < 1) throw ConfigError("max_outer must be at least 1");
  if (inner.max_iter && *inner.max_iter < 1) throw ConfigError("max_inner must be at least 1");
  if (!std::isfinite(mad_scale) || mad_scale <= 0.0) {
    throw ConfigError("mad_scale must be finite and positive");
  }
}

// --- objective and direction step ---------------------------------------------

double objective(const DataMatrix& data, double m, const Direction& v, Bandwidth h) {
  if (data.cols() != v.dim()) throw DimensionError("direction dimension mismatch");
  if (!std::isfinite(m)) throw InvalidArgument("mode must be finite");
  return mode::kde(project(data, v.vec()), m, h);
}

DirectionUpdate weighted_direction_update_detail(const DataMatrix& data, double m,
                                                 const Direction& v_curr,
                                                 const DirectionList& constraints, Bandwidth h,
                                                 const InnerConfig& inner) {
  if (data.cols() != v_curr.dim()) throw DimensionError("direction dimension mismatch");
  const auto chart = manifold::build_chart(v_curr, constraints);

  const Eigen::VectorXd z = (m - (data * v_curr.vec()).array()).matrix() / h.value();
  Eigen::VectorXd q = (-0.5 * z.array().square()).exp().matrix();
  const double total = q.sum();
  if (!(total > 0.0)) return {v_curr, 0.0, 0.0, false, 0};
  q /= total;

  // G(v) = m^2 - 2m v'mu + v'Sv with the q-weighted moments
  const Eigen::VectorXd mu = data.transpose() * q;
  const Eigen::MatrixXd S = data.transpose() * q.asDiagonal() * data;
  const double scale = m * m + S.trace() + 1e-300;
  auto relaxed = [&](const Eigen::VectorXd& v) {
    return m * m - 2.0 * m * v.dot(mu) + v.dot(S * v);
  };

  optimize::Objective f = [&](const Eigen::VectorXd& beta, Eigen::VectorXd* grad) {
    const Eigen::VectorXd v = chart.inverse(beta).vec();
    if (grad) {
      const Eigen::VectorXd g = (2.0 * (S * v) - 2.0 * m * mu) / scale;
      *grad = chart.pullback(beta, g);
    }
    return relaxed(v) / scale;
  };
  optimize::CgOptions opts;
  opts.grad_tol = inner.tol;
  opts.max_iter = inner.max_iter.value_or(100 * static_cast<int>(chart.coord_dim()));
  const auto res = optimize::minimize_cg(f, Eigen::VectorXd::Zero(chart.coord_dim()), opts);

  const Direction candidate = chart.inverse(res.x);
  const double g_before = relaxed(v_curr.vec());
  const double g_after = relaxed(candidate.vec());
  const bool better = objective(data, m, candidate, h) > objective(data, m, v_curr, h);
  return {better ? candidate : v_curr, g_before, g_after, better, res.iterations};
}

// --- fit -----------------------------------------------------------------------

MpcaModel fit(const DataMatrix& data, const FitConfig& cfg, FitTrace* trace) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (d < 2) throw DimensionError("fit needs at least two columns");
  if (n < 2) throw DegenerateSample("fit needs at least two rows");
  if (!data.allFinite()) throw InvalidArgument("data contains non-finite values");
  cfg.validate(d);

  grid::GridConfig gcfg = cfg.grid;
  gcfg.mad_scale = cfg.mad_scale;

  MpcaModel model;
  model.dim = d;
  model.n_samples = n;
  model.center = Eigen::VectorXd::Zero(d);

  auto record = [&](int k, int outer, TraceStep::Kind kind, Bandwidth h, double value) {
    if (trace) trace->push_back({k, outer, kind, h.value(), value});
  };

  for (int k = 1; k <= cfg.n_components; ++k) {
    const DirectionList constraints = model.directions();
    const bool free_direction = static_cast<Eigen::Index>(constraints.size()) < d - 1;

    Direction v = free_direction
                      ? grid::grid_init(data, constraints, gcfg)
                      : Direction(manifold::orthonormal_complement(model.minor_basis()).col(0));
    auto proj = project(data, v.vec());
    Bandwidth h = kernel::terrell_bandwidth(proj, cfg.mad_scale);
    double m = mode::newton_mode(proj, h, mode::half_sample_mode(proj)).m;
    double value = mode::kde(proj, m, h);

    int outer = 0;
    bool converged = !free_direction;
    while (free_direction && outer < cfg.max_outer) {
      ++outer;
      proj = project(data, v.vec());
      h = kernel::terrell_bandwidth(proj, cfg.mad_scale);
      record(k, outer, TraceStep::Kind::segment_start, h, mode::kde(proj, m, h));

      m = pick_mode(proj, h, m);
      record(k, outer, TraceStep::Kind::mode_step, h, mode::kde(proj, m, h));

      v = weighted_direction_update(data, m, v, constraints, h, cfg.inner);
      proj = project(data, v.vec());
      const double next = mode::kde(proj, m, h);
      record(k, outer, TraceStep::Kind::direction_step, h, next);

      const double change = std::abs(next - value);
      value = next;
      if (change < cfg.outer_tol * value) {
        converged = true;
        break;
      }
    }

    const Direction canonical = v.canonical();
    if (canonical.dot(v) < 0.0) m = -m;
    model.components.push_back({k, canonical, m, h, value, outer, converged});
    model.center += m * canonical.vec();
  }
  return model;
}

// --- direct maximization ---------------------------------------------------------

Direction maximize_density(const DataMatrix& points, const Eigen::VectorXd& weights, double m,
                           Bandwidth h, const Direction& start,
                           const DirectionList& constraints, double grad_tol) {
  if (points.rows() != weights.size()) throw DimensionError("one weight per point required");
  if (points.cols() != start.dim()) throw DimensionError("direction dimension mismatch");
  const double inv_h = 1.0 / h.value();

  auto density = [&](const Eigen::VectorXd& v, Eigen::VectorXd* grad) {
    const Eigen::ArrayXd z = (m - (points * v).array()) * inv_h;
    const Eigen::ArrayXd k = weights.array() * (-0.5 * z.square()).exp();
    if (grad) *grad = points.transpose() * (k * z).matrix() * inv_h;
    return k.sum();
  };

  Direction current = Direction::normalized(manifold::project_out(start.vec(), constraints));
  if (static_cast<Eigen::Index>(constraints.size()) >= start.dim() - 1) return current;

  for (int restart = 0; restart < 8; ++restart) {
    const auto chart = manifold::build_chart(current, constraints);
    const double scale = density(current.vec(), nullptr);
    if (!(scale > 0.0)) return current;
    optimize::Objective f = [&](const Eigen::VectorXd& beta, Eigen::VectorXd* grad) {
      const Eigen::VectorXd v = chart.inverse(beta).vec();
      Eigen::VectorXd g;
      const double value = density(v, grad ? &g : nullptr);
      if (grad) *grad = chart.pullback(beta, -g / scale);
      return -value / scale;
    };
    optimize::CgOptions opts;
    opts.grad_tol = grad_tol;
    opts.max_iter = 500 * static_cast<int>(chart.coord_dim());
    const auto res = optimize::minimize_cg(f, Eigen::VectorXd::Zero(chart.coord_dim()), opts);
    current = chart.inverse(res.x);
    if (res.converged && res.x.norm() < 1e-3) break;
  }
  return current;
}

}  // namespace modalpca::estimator
