#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "plaplace/cone.hpp"
#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"
#include "plaplace/problem.hpp"
#include "plaplace/solver_detail.hpp"

namespace plaplace {

struct EigenResult {
  RadialFn u;                  // maximizer, in the cone, ||u|| = 1
  double lambda = 0.0;         // 1 / integral(a f(u) u)
  double S = 0.0;              // attained supremum of the potential
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;  // one entry per accepted iterate
};

namespace detail {

// Feasibility-preserving update shared by both solvers: step, project onto
// the monotone nonnegative cone, then renormalize onto the unit sphere.
inline RadialFn cone_sphere_step(const RadialFn& u,
                                 std::span<const double> dir, double s,
                                 double p) {
  RadialFn trial{u.grid, u.v};
  for (size_t i = 0; i < trial.v.size(); ++i) trial.v[i] += s * dir[i];
  auto [proj, cert] = project_cone(trial);
  (void)cert;
  return normalize_sphere(proj, p);
}

}  // namespace detail

// Cone-constrained maximization of the potential on the unit sphere of
// W^{1,p}: projected ascent with backtracking. The accepted objective
// sequence is nondecreasing by construction. Convergence requires five
// consecutive iterations with relative improvement below tol together with
// a sub-tol sup-norm step.
inline EigenResult solve_eigen(const RadialGrid& g, const ProblemSpec& ps,
                               const RadialFn& initial) {
  validate(ps);
  const double p = ps.p;

  auto [u, cert0] = project_cone(initial);
  (void)cert0;
  u = normalize_sphere(u, p);

  const detail::Tridiag A = detail::h1_operator(g);

  EigenResult res;
  double obj = potential(u, ps);
  res.objective_history.push_back(obj);

  double s = 1.0;
  int small_streak = 0;
  bool converged = false;
  int iter = 0;

  for (iter = 1; iter <= ps.max_iter; ++iter) {
    const std::vector<double> gI = grad_potential(u, ps);
    const std::vector<double> gN = grad_sobolev_pow(u, p);
    const std::vector<double> dir = detail::tangent_direction(A, gI, gN);

    bool accepted = false;
    double step_linf = 0.0;
    double new_obj = obj;
    RadialFn next{u.grid, {}};
    while (s >= 1e-18) {
      RadialFn trial = detail::cone_sphere_step(u, dir, s, p);
      const double trial_obj = potential(trial, ps);
      double delta2 = 0.0, linf = 0.0;
      for (size_t i = 0; i < trial.v.size(); ++i) {
        const double d = trial.v[i] - u.v[i];
        delta2 += g.mass[i] * d * d;
        linf = std::max(linf, std::abs(d));
      }
      if (trial_obj - obj >= 1e-4 * s * delta2 && trial_obj > obj) {
        accepted = true;
        new_obj = trial_obj;
        step_linf = linf;
        next = std::move(trial);
        break;
      }
      s *= 0.5;
    }

    double rel_impr = 0.0;
    if (accepted) {
      rel_impr = (new_obj - obj) / std::max(std::abs(obj), 1.0);
      u = std::move(next);
      obj = new_obj;
      res.objective_history.push_back(obj);
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

  res.u = std::move(u);
  res.S = obj;
  res.lambda = multiplier(res.u, ps);
  res.iterations = std::min(iter, ps.max_iter);
  res.converged = converged;
  return res;
}

inline EigenResult solve_eigen(const RadialGrid& g, const ProblemSpec& ps) {
  // default start 1 + r: strictly increasing, positive, non-constant
  return solve_eigen(g, ps, sample_fn(g, [](double r) { return 1.0 + r; }));
}

}  // namespace plaplace
