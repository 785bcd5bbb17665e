#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"
#include "plaplace/problem.hpp"

namespace plaplace {

struct VerifyReport {
  double weak_residual_max = 0.0;
  double min_value = 0.0;
  double min_interior_slope = 0.0;  // forward differences on 0.05 <= r <= 0.95
  double lambda_consistency = 0.0;  // relative defect of lambda * (a f(u), u)
  double subsolution_margin = 0.0;  // min of u - (u(1)/e) e^r over the grid
  double linf_sobolev_ratio = 0.0;  // empirical embedding ratio ||u||_inf/||u||
};

// Weak residual of the discrete Euler-Lagrange equation against an
// arbitrary nodal test function v:
//   (|Du|^{p-2}Du, Dv) + (|u|^{p-2}u, v) - lambda (a f(u), v)
// normalized by ||v|| * max(1, ||u||^{p-1}). This assembly uses the exact
// duality map on the value path; it shares no code with the optimizer
// gradients.
inline double weak_residual_against(const RadialFn& u, double lambda,
                                    const ProblemSpec& ps,
                                    std::span<const double> v) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  if (v.size() != u.v.size())
    fail(errc::invalid_spec, "weak_residual: size mismatch");
  const double p = ps.p;

  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double du = (u.v[i + 1] - u.v[i]) / g.h;
    const double dv = (v[i + 1] - v[i]) / g.h;
    acc += g.cell[i] * signed_pow(du, p - 1.0) * dv;
  }
  for (int i = 0; i <= g.n; ++i)
    acc += g.mass[i] * v[i] *
           (signed_pow(u.v[i], p - 1.0) -
            lambda * weight_at(ps.weight, g.node[i]) *
                nonlin_f(ps.nonlin, std::max(u.v[i], 0.0)));

  double vnorm_pow = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double dv = (v[i + 1] - v[i]) / g.h;
    vnorm_pow += g.cell[i] * std::pow(std::abs(dv), p);
  }
  for (int i = 0; i <= g.n; ++i)
    vnorm_pow += g.mass[i] * std::pow(std::abs(v[i]), p);
  const double vnorm = std::pow(vnorm_pow, 1.0 / p);
  if (!(vnorm > 0.0)) fail(errc::zero_function, "weak_residual: zero test fn");

  const double unorm = std::pow(sobolev_norm_pow(u, p), (p - 1.0) / p);
  return acc / (vnorm * std::max(1.0, unorm));
}

// Maximum normalized residual over the full hat-function basis (boundary
// hats included: the Neumann condition is natural, not imposed).
inline double weak_residual_max(const RadialFn& u, double lambda,
                                const ProblemSpec& ps) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  const double p = ps.p;
  const double unorm = std::pow(sobolev_norm_pow(u, p), (p - 1.0) / p);
  const double uscale = std::max(1.0, unorm);

  std::vector<double> dual(g.n);
  for (int i = 0; i < g.n; ++i)
    dual[i] = signed_pow((u.v[i + 1] - u.v[i]) / g.h, p - 1.0);

  double worst = 0.0;
  for (int j = 0; j <= g.n; ++j) {
    double num = 0.0, vpow = 0.0;
    if (j > 0) {
      num += g.cell[j - 1] * dual[j - 1] / g.h;
      vpow += g.cell[j - 1] * std::pow(g.h, -p);
    }
    if (j < g.n) {
      num -= g.cell[j] * dual[j] / g.h;
      vpow += g.cell[j] * std::pow(g.h, -p);
    }
    num += g.mass[j] * (signed_pow(u.v[j], p - 1.0) -
                        lambda * weight_at(ps.weight, g.node[j]) *
                            nonlin_f(ps.nonlin, std::max(u.v[j], 0.0)));
    vpow += g.mass[j];
    const double r = std::abs(num) / (std::pow(vpow, 1.0 / p) * uscale);
    worst = std::max(worst, r);
  }
  return worst;
}

// Pointwise comparison with the exponential subsolution: with kappa set by
// matching at the boundary, kappa = u(1)/e, positive radially increasing
// solutions dominate kappa e^r on the whole ball. Returns the minimum of
// u - kappa e^r (zero at r = 1 up to rounding by construction).
inline double subsolution_margin(const RadialFn& u) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  const double un = u.v[g.n];
  if (!(un > 0.0))
    fail(errc::zero_boundary_value,
         "subsolution comparison needs u(1) > 0");
  const double kappa = un / std::numbers::e_v<double>;
  double margin = u.v[0] - kappa;  // e^0 = 1
  for (int i = 1; i <= g.n; ++i)
    margin = std::min(margin, u.v[i] - kappa * std::exp(g.node[i]));
  return margin;
}

// Weak action of phi = e^r against the hat at node j (interior hats vanish
// on the boundary). Integrating by parts, this equals the integral of
// e^{(p-1)r} r^{N-2} (1 - N + (2-p) r) times the hat, which is strictly
// negative for N >= 3 -- the certificate that phi is a genuine subsolution.
inline double exp_comparison_action(const RadialGrid& g, double p, int j) {
  if (j <= 0 || j >= g.n)
    fail(errc::invalid_spec, "exp_comparison_action: interior nodes only");
  std::vector<double> phi(g.n + 1), dual(g.n);
  for (int i = 0; i <= g.n; ++i) phi[i] = std::exp(g.node[i]);
  for (int i = 0; i < g.n; ++i)
    dual[i] = signed_pow((phi[i + 1] - phi[i]) / g.h, p - 1.0);
  double acc = g.cell[j - 1] * dual[j - 1] / g.h - g.cell[j] * dual[j] / g.h;
  acc += g.mass[j] * signed_pow(phi[j], p - 1.0);
  return acc;
}

// Monotonicity gap of the p-Laplacian duality map:
//   (|x|^{p-2}x - |y|^{p-2}y, x - y) >= 0, with equality iff x == y.
// At p = 2 this is exactly |x - y|^2.
inline double simon_gap(std::span<const double> x, std::span<const double> y,
                        double p) {
  if (x.size() != y.size())
    fail(errc::invalid_spec, "simon_gap: dimension mismatch");
  double nx = 0.0, ny = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  nx = std::sqrt(nx);
  ny = std::sqrt(ny);
  const double sx = nx == 0.0 ? 0.0 : std::pow(nx, p - 2.0);
  const double sy = ny == 0.0 ? 0.0 : std::pow(ny, p - 2.0);
  double acc = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    acc += (sx * x[i] - sy * y[i]) * (x[i] - y[i]);
  return acc;
}

inline VerifyReport verify_solution(const RadialFn& u, double lambda,
                                    const ProblemSpec& ps) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  VerifyReport rep;
  rep.weak_residual_max = weak_residual_max(u, lambda, ps);
  rep.min_value = *std::min_element(u.v.begin(), u.v.end());

  double min_slope = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n; ++i) {
    if (g.node[i] >= 0.05 && g.node[i + 1] <= 0.95)
      min_slope = std::min(min_slope, (u.v[i + 1] - u.v[i]) / g.h);
  }
  rep.min_interior_slope = min_slope;

  const double npow = sobolev_norm_pow(u, ps.p);
  RadialFn clamped{u.grid, u.v};
  for (double& x : clamped.v) x = std::max(x, 0.0);
  const double pairing = potential_pairing(clamped, ps);
  rep.lambda_consistency =
      std::abs(lambda * pairing - npow) / std::max(npow, 1e-300);

  rep.subsolution_margin = subsolution_margin(u);

  double linf = 0.0;
  for (double x : u.v) linf = std::max(linf, std::abs(x));
  rep.linf_sobolev_ratio = linf / std::pow(npow, 1.0 / ps.p);
  return rep;
}

}  // namespace plaplace
