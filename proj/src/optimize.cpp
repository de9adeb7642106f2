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

#include "modalpca/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modalpca/error.hpp"

namespace modalpca::optimize {

namespace {

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.1;
constexpr int kMaxLineEvals = 40;

struct Point {
  double alpha;
  double f;
  double slope;
  Eigen::VectorXd x;
  Eigen::VectorXd g;
};

class LineSearch {
 public:
  LineSearch(const Objective& f, const Eigen::VectorXd& x, const Eigen::VectorXd& p)
      : f_(f), x_(x), p_(p) {}

  Point eval(double alpha) {
    ++evals_;
    Point pt{alpha, 0.0, 0.0, x_ + alpha * p_, Eigen::VectorXd()};
    pt.f = f_(pt.x, &pt.g);
    if (!std::isfinite(pt.f) || !pt.g.allFinite()) {
      pt.f = std::numeric_limits<double>::infinity();
      pt.slope = std::numeric_limits<double>::quiet_NaN();
      return pt;
    }
    pt.slope = pt.g.dot(p_);
    return pt;
  }

  int evals() const { return evals_; }

 private:
  const Objective& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  int evals_ = 0;
};

// Safeguarded minimizer of the quadratic through (a, fa, slope_a) and (b, fb).
double interpolate(const Point& a, const Point& b) {
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  double t = 0.5 * (lo + hi);
  if (std::isfinite(b.f) && std::isfinite(a.slope)) {
    const double dx = b.alpha - a.alpha;
    const double denom = 2.0 * (b.f - a.f - a.slope * dx);
    if (denom > 0.0) t = a.alpha - a.slope * dx * dx / denom;
  }
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) t = 0.5 * (lo + hi);
  return t;
}

// Strong-Wolfe line search (bracket then zoom). Returns the accepted point, or
// the best strictly-decreasing point seen if the conditions cannot be met.
bool wolfe_search(LineSearch& ls, const Point& start, double alpha0, Point& out) {
  Point prev = start;
  Point best = start;
  double alpha = alpha0;
  auto consider = [&](const Point& pt) {
    if (pt.f < best.f) best = pt;
  };
  auto zoom = [&](Point lo, Point hi) -> bool {
    while (ls.evals() < kMaxLineEvals) {
      Point mid = ls.eval(interpolate(lo, hi));
      consider(mid);
      if (!std::isfinite(mid.f) || mid.f > start.f + kC1 * mid.alpha * start.slope ||
          mid.f >= lo.f) {
        hi = mid;
      } else {
        if (std::abs(mid.slope) <= -kC2 * start.slope) {
          out = mid;
          return true;
        }
        if (mid.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = mid;
      }
      if (std::abs(hi.alpha - lo.alpha) <= 1e-16 * std::max(1.0, lo.alpha)) break;
    }
    return false;
  };

  for (int i = 0; ls.evals() < kMaxLineEvals; ++i) {
    Point cur = ls.eval(alpha);
    consider(cur);
    if (!std::isfinite(cur.f) || cur.f > start.f + kC1 * alpha * start.slope ||
        (i > 0 && cur.f >= prev.f)) {
      if (zoom(prev, cur)) return true;
      break;
    }
    if (std::abs(cur.slope) <= -kC2 * start.slope) {
      out = cur;
      return true;
    }
    if (cur.slope >= 0.0) {
      if (zoom(cur, prev)) return true;
      break;
    }
    prev = cur;
    alpha *= 2.0;
  }
  if (best.f < start.f) {
    out = best;
    return true;
  }
  return false;
}

}  // namespace

CgResult minimize_cg(const Objective& f, Eigen::VectorXd x0, const CgOptions& opts) {
  Eigen::VectorXd g;
  double fx = f(x0, &g);
  if (!std::isfinite(fx) || !g.allFinite()) {
    throw OptimizationFailure("objective is not finite at the starting point", x0);
  }
  CgResult res{std::move(x0), fx, g.norm(), 0, false};
  if (res.grad_norm < opts.grad_tol) {
    res.converged = true;
    return res;
  }

  const auto n = res.x.size();
  Eigen::VectorXd p = -g;
  bool steepest = true;
  double prev_step = 0.0;
  double prev_slope = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      p = -g;
      slope = -g.squaredNorm();
      steepest = true;
    }
    double alpha0 = (it == 1 || prev_slope == 0.0)
                        ? std::min(1.0, 1.0 / p.norm())
                        : std::min(1e3, prev_step * prev_slope / slope * 1.01);
    if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) alpha0 = 1.0 / p.norm();

    LineSearch ls(f, res.x, p);
    Point start{0.0, res.value, slope, res.x, g};
    Point accepted;
    if (!wolfe_search(ls, start, alpha0, accepted)) {
      if (!steepest) {
        // retry once along steepest descent
        p = -g;
        steepest = true;
        prev_slope = 0.0;
        continue;
      }
      break;
    }
    if (!accepted.g.allFinite()) {
      throw OptimizationFailure("non-finite gradient during line search", res.x);
    }

    const Eigen::VectorXd g_new = accepted.g;
    double beta = g_new.dot(g_new - g) / g.squaredNorm();
    if (!std::isfinite(beta) || beta < 0.0 || it % n == 0) beta = 0.0;

    prev_step = accepted.alpha;
    prev_slope = slope;
    res.x = accepted.x;
    res.value = accepted.f;
    g = g_new;
    res.grad_norm = g.norm();
    res.iterations = it;
    if (res.grad_norm < opts.grad_tol) {
      res.converged = true;
      break;
    }
    p = -g + beta * p;
    steepest = beta == 0.0;
  }
  return res;
}

}  // namespace modalpca::optimize
