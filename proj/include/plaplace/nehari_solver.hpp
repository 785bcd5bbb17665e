#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "plaplace/cone.hpp"
#include "plaplace/eigen_solver.hpp"
#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"
#include "plaplace/problem.hpp"
#include "plaplace/solver_detail.hpp"

namespace plaplace {

struct NehariResult {
  RadialFn u;               // minimizer rescaled onto the Nehari set
  double c0 = 0.0;          // attained energy J(u)
  double t0_last = 0.0;     // final fibering scale
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;  // one entry per accepted iterate
};

namespace detail {

// Bisection for the root of a scalar function that is positive left of its
// root and negative right of it. Bracket grown by doubling from t = 1.
inline double positive_root_bisect(const std::function<double(double)>& fn,
                                   double rel_tol) {
  double lo = 1.0, hi = 1.0;
  double f1 = fn(1.0);
  if (f1 == 0.0) return 1.0;
  if (f1 > 0.0) {
    do {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e30)
        fail(errc::bracket_failure, "fibering root above 1e30");
    } while (fn(hi) > 0.0);
  } else {
    do {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-30)
        fail(errc::bracket_failure, "fibering root below 1e-30");
    } while (fn(lo) < 0.0);
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (fn(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Unique positive root of the fibering gap by bisection on the full
// quadrature form of sigma. Independent of the closed form below; kept as a
// second route for cross-checking.
inline double nehari_scale_bisect(const RadialFn& u, const ProblemSpec& ps) {
  if (!(sobolev_norm_pow(u, ps.p) > 0.0))
    fail(errc::zero_function, "nehari_scale_bisect: zero function");
  return detail::positive_root_bisect(
      [&](double t) { return nehari_gap(u, t, ps); }, 1e-12);
}

// Fibering scale for the power nonlinearity: sigma(t) = A t^p - B t^{q+1}
// vanishes at t0 = (A/B)^{1/(q+1-p)}. The closed form is returned after a
// scalar bisection on the same reduced polynomial confirms it; disagreement
// would mean a broken reduction, not bad data.
inline double nehari_scale(const RadialFn& u, const ProblemSpec& ps) {
  const double A = sobolev_norm_pow(u, ps.p);
  if (!(A > 0.0)) fail(errc::zero_function, "nehari_scale: zero function");
  double B = 0.0;
  const RadialGrid& g = *u.grid;
  for (int i = 0; i <= g.n; ++i) {
    if (u.v[i] < 0.0)
      fail(errc::negative_input, "nehari_scale: negative sample");
    B += g.mass[i] * weight_at(ps.weight, g.node[i]) *
         std::pow(u.v[i], ps.nonlin.q + 1.0);
  }
  if (!(B > 0.0))
    fail(errc::bracket_failure,
         "nehari_scale: a u^{q+1} has zero integral, no fibering root");

  const double expo = ps.nonlin.q + 1.0 - ps.p;  // > 0 by assumption (F)
  const double t0 = std::pow(A / B, 1.0 / expo);
  const double t_bis = detail::positive_root_bisect(
      [&](double t) {
        return A * std::pow(t, ps.p) - B * std::pow(t, ps.nonlin.q + 1.0);
      },
      1e-12);
  if (std::abs(t_bis - t0) > 1e-8 * t0)
    throw std::logic_error("nehari_scale: closed form vs bisection mismatch");
  return t0;
}

namespace detail {

struct FiberEval {
  double e;   // J(t0 u)
  double t0;
};

inline FiberEval fiber_energy(const RadialFn& u, const ProblemSpec& ps) {
  const double t0 = nehari_scale(u, ps);
  RadialFn scaled{u.grid, u.v};
  for (double& x : scaled.v) x *= t0;
  return {energy(scaled, ps), t0};
}

// d/du_j J(t0(u) u) = t0 * (grad J)(t0 u)_j: the t0-variation drops out
// because sigma(t0) = 0 (envelope identity).
inline std::vector<double> fiber_energy_grad(const RadialFn& u, double t0,
                                             const ProblemSpec& ps) {
  RadialFn scaled{u.grid, u.v};
  for (double& x : scaled.v) x *= t0;
  std::vector<double> gN = grad_sobolev_pow(scaled, ps.p);
  const std::vector<double> gI = grad_potential(scaled, ps);
  for (size_t i = 0; i < gN.size(); ++i)
    gN[i] = t0 * (gN[i] / ps.p - gI[i]);
  return gN;
}

}  // namespace detail

// Minimizes J(t0(u) u) over the unit sphere of the cone by projected
// descent; the output is rescaled by the final fibering scale, so it sits
// on the Nehari set up to roundoff. The envelope gradient identity is
// validated against central finite differences at the initial point; a
// relative mismatch above 1e-4 aborts the run.
inline NehariResult solve_fixed(const RadialGrid& g, const ProblemSpec& ps,
                                const RadialFn& initial) {
  validate(ps);
  const double p = ps.p;

  auto [u, cert0] = project_cone(initial);
  (void)cert0;
  u = normalize_sphere(u, p);

  {  // one-time gradient consistency check at the initial point
    auto [e0, t0] = detail::fiber_energy(u, ps);
    const std::vector<double> ga = detail::fiber_energy_grad(u, t0, ps);
    const double fd_h = 1e-6;
    double num = 0.0, den = 0.0;
    RadialFn probe{u.grid, u.v};
    for (size_t j = 0; j < u.v.size(); ++j) {
      probe.v[j] = u.v[j] + fd_h;
      const double ep = detail::fiber_energy(probe, ps).e;
      double fd;
      if (u.v[j] >= fd_h) {  // keep the probe nonnegative
        probe.v[j] = u.v[j] - fd_h;
        fd = (ep - detail::fiber_energy(probe, ps).e) / (2.0 * fd_h);
      } else {
        fd = (ep - e0) / fd_h;
      }
      probe.v[j] = u.v[j];
      num += (ga[j] - fd) * (ga[j] - fd);
      den += ga[j] * ga[j];
    }
    if (!(std::sqrt(num) <= 1e-4 * std::max(std::sqrt(den), 1e-300)))
      fail(errc::gradient_inconsistency,
           "envelope gradient disagrees with finite differences");
  }

  const detail::Tridiag A = detail::h1_operator(g);

  NehariResult res;
  auto cur = detail::fiber_energy(u, ps);
  res.objective_history.push_back(cur.e);

  double s = 1.0;
  int small_streak = 0;
  bool converged = false;
  int iter = 0;

  for (iter = 1; iter <= ps.max_iter; ++iter) {
    std::vector<double> gE = detail::fiber_energy_grad(u, cur.t0, ps);
    const std::vector<double> gN = grad_sobolev_pow(u, p);
    std::vector<double> dir = detail::tangent_direction(A, gE, gN);
    for (double& x : dir) x = -x;  // descent

    bool accepted = false;
    double step_linf = 0.0;
    detail::FiberEval next_eval = cur;
    RadialFn next{u.grid, {}};
    while (s >= 1e-18) {
      RadialFn trial = detail::cone_sphere_step(u, dir, s, p);
      const auto trial_eval = detail::fiber_energy(trial, ps);
      double delta2 = 0.0, linf = 0.0;
      for (size_t i = 0; i < trial.v.size(); ++i) {
        const double d = trial.v[i] - u.v[i];
        delta2 += g.mass[i] * d * d;
        linf = std::max(linf, std::abs(d));
      }
      if (cur.e - trial_eval.e >= 1e-4 * s * delta2 && trial_eval.e < cur.e) {
        accepted = true;
        next_eval = trial_eval;
        step_linf = linf;
        next = std::move(trial);
        break;
      }
      s *= 0.5;
    }

    double rel_impr = 0.0;
    if (accepted) {
      rel_impr = (cur.e - next_eval.e) / std::max(std::abs(cur.e), 1.0);
      u = std::move(next);
      cur = next_eval;
      res.objective_history.push_back(cur.e);
      s = std::min(s * 1.5, 1e8);
    } else {
      s = std::max(s, 1e-18);
    }

    if (rel_impr < ps.tol)
      ++small_streak;
    else
      small_streak = 0;

    if (small_streak >= 5 && step_linf < ps.tol) {
      converged = true;
      break;
    }
  }

  RadialFn scaled{u.grid, u.v};
  for (double& x : scaled.v) x *= cur.t0;
  res.u = std::move(scaled);
  res.c0 = cur.e;
  res.t0_last = cur.t0;
  res.iterations = std::min(iter, ps.max_iter);
  res.converged = converged;
  return res;
}

inline NehariResult solve_fixed(const RadialGrid& g, const ProblemSpec& ps) {
  return solve_fixed(g, ps, sample_fn(g, [](double r) { return 1.0 + r; }));
}

}  // namespace plaplace
