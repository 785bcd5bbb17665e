#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "plaplace/grid.hpp"
#include "plaplace/problem.hpp"

namespace plaplace {

// sign(s) |s|^e, with 0 mapped to 0 so that degenerate slopes never produce
// 0 * inf. This is the exact duality map used on the value path; gradients
// of the p-energy use the regularized variant below when p < 2.
inline double signed_pow(double s, double e) {
  if (s == 0.0) return 0.0;
  return s > 0.0 ? std::pow(s, e) : -std::pow(-s, e);
}

namespace detail {

constexpr double kSlopeReg = 1e-12;  // regularizer for |Du|^{p-2} when p < 2

// |s|^{p-2} s for the gradient assembly. For p >= 2 this is smooth enough
// as-is; for p < 2 the factor |s|^{p-2} blows up at s = 0, so it is
// evaluated as (s^2 + eps^2)^{(p-2)/2} s. Only gradients see this: energy
// values always use the exact |s|^p.
inline double dual_map(double s, double p) {
  if (p >= 2.0) return signed_pow(s, p - 1.0);
  return s * std::pow(s * s + kSlopeReg * kSlopeReg, 0.5 * (p - 2.0));
}

inline void require_finite(std::span<const double> s, const char* who) {
  for (double x : s)
    if (!std::isfinite(x))
      fail(errc::non_finite_input, std::string(who) + ": non-finite sample");
}

inline void require_grid(const RadialFn& u) {
  if (!u.grid || static_cast<int>(u.v.size()) != u.grid->n + 1)
    fail(errc::invalid_spec, "radial function not attached to its grid");
}

}  // namespace detail

// Quadrature of node samples against the radial measure.
inline double quad(const RadialGrid& g, std::span<const double> s) {
  if (static_cast<int>(s.size()) != g.n + 1)
    fail(errc::invalid_spec, "quad: sample count does not match grid");
  detail::require_finite(s, "quad");
  double acc = 0.0;
  for (int i = 0; i <= g.n; ++i) acc += g.mass[i] * s[i];
  return acc;
}

inline double quad(const RadialFn& u) {
  detail::require_grid(u);
  return quad(*u.grid, u.v);
}

// Mass-weighted l2 norm of a nodal vector; the metric in which the cone
// projection is performed.
inline double mass_norm(const RadialGrid& g, std::span<const double> s) {
  double acc = 0.0;
  for (int i = 0; i <= g.n; ++i) acc += g.mass[i] * s[i] * s[i];
  return std::sqrt(acc);
}

// ||u||^p = integral of |Du|^p + |u|^p. The difference quotient on each
// cell is treated as constant there and weighted by the exact cell measure.
inline double sobolev_norm_pow(const RadialFn& u, double p) {
  detail::require_grid(u);
  detail::require_finite(u.v, "sobolev_norm");
  const RadialGrid& g = *u.grid;
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double slope = (u.v[i + 1] - u.v[i]) / g.h;
    acc += g.cell[i] * std::pow(std::abs(slope), p);
  }
  for (int i = 0; i <= g.n; ++i)
    acc += g.mass[i] * std::pow(std::abs(u.v[i]), p);
  return acc;
}

inline double sobolev_norm(const RadialFn& u, double p) {
  return std::pow(sobolev_norm_pow(u, p), 1.0 / p);
}

// Potential term: integral of a(r) F(u). Requires u >= 0; fractional powers
// of negative values would silently produce NaN otherwise.
inline double potential(const RadialFn& u, const ProblemSpec& ps) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  detail::require_finite(u.v, "potential");
  double acc = 0.0;
  for (int i = 0; i <= g.n; ++i) {
    if (u.v[i] < 0.0)
      fail(errc::negative_input, "potential: negative sample");
    acc += g.mass[i] * weight_at(ps.weight, g.node[i]) *
           nonlin_F(ps.nonlin, u.v[i]);
  }
  return acc;
}

// Free energy J(u) = ||u||^p / p - potential(u).
inline double energy(const RadialFn& u, const ProblemSpec& ps) {
  return sobolev_norm_pow(u, ps.p) / ps.p - potential(u, ps);
}

// Integral of a(r) f(u) u, the denominator of the natural multiplier.
inline double potential_pairing(const RadialFn& u, const ProblemSpec& ps) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  detail::require_finite(u.v, "potential_pairing");
  double acc = 0.0;
  for (int i = 0; i <= g.n; ++i) {
    if (u.v[i] < 0.0)
      fail(errc::negative_input, "potential_pairing: negative sample");
    acc += g.mass[i] * weight_at(ps.weight, g.node[i]) *
           nonlin_f(ps.nonlin, u.v[i]) * u.v[i];
  }
  return acc;
}

// Multiplier attached to a normalized maximizer: 1 / integral(a f(u) u).
inline double multiplier(const RadialFn& u, const ProblemSpec& ps) {
  const double denom = potential_pairing(u, ps);
  if (!(denom > 1e-300))
    fail(errc::degenerate_denominator,
         "multiplier: integral of a f(u) u vanishes");
  return 1.0 / denom;
}

// Fibering gap sigma(t) = t^p ||u||^p - integral(a f(tu) tu); its unique
// positive root rescales u onto the Nehari set. For the power nonlinearity
// sigma(t) = A t^p - B t^{q+1} with A = ||u||^p, B = integral(a u^{q+1}).
inline double nehari_gap(const RadialFn& u, double t, const ProblemSpec& ps) {
  if (!(t >= 0.0))
    fail(errc::negative_input, "nehari_gap: t must be nonnegative");
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  const double tp = std::pow(t, ps.p);
  double pair = 0.0;
  for (int i = 0; i <= g.n; ++i) {
    if (u.v[i] < 0.0)
      fail(errc::negative_input, "nehari_gap: negative sample");
    const double tu = t * u.v[i];
    pair += g.mass[i] * weight_at(ps.weight, g.node[i]) *
            nonlin_f(ps.nonlin, tu) * tu;
  }
  if (!std::isfinite(pair))
    fail(errc::non_finite_input, "nehari_gap: overflow in pairing");
  return tp * sobolev_norm_pow(u, ps.p) - pair;
}

// Exact gradient of the potential with respect to the node values: the
// quadrature is a plain weighted sum, so the gradient is diagonal.
inline std::vector<double> grad_potential(const RadialFn& u,
                                          const ProblemSpec& ps) {
  detail::require_grid(u);
  const RadialGrid& g = *u.grid;
  std::vector<double> out(g.n + 1);
  for (int i = 0; i <= g.n; ++i) {
    if (u.v[i] < 0.0)
      fail(errc::negative_input, "grad_potential: negative sample");
    out[i] = g.mass[i] * weight_at(ps.weight, g.node[i]) *
             nonlin_f(ps.nonlin, u.v[i]);
  }
  return out;
}

// Exact gradient of ||u||^p with respect to the node values. Node j sees
// the mass term p m_j |u_j|^{p-2} u_j plus the two adjacent cells of the
// gradient energy, d/du_j cell_i |(u_{i+1}-u_i)/h|^p.
inline std::vector<double> grad_sobolev_pow(const RadialFn& u, double p) {
  detail::require_grid(u);
  detail::require_finite(u.v, "grad_sobolev_pow");
  const RadialGrid& g = *u.grid;
  std::vector<double> out(g.n + 1, 0.0);
  for (int i = 0; i < g.n; ++i) {
    const double slope = (u.v[i + 1] - u.v[i]) / g.h;
    const double flux = g.cell[i] * detail::dual_map(slope, p) / g.h;
    out[i] -= p * flux;
    out[i + 1] += p * flux;
  }
  for (int i = 0; i <= g.n; ++i)
    out[i] += p * g.mass[i] * signed_pow(u.v[i], p - 1.0);
  return out;
}

}  // namespace plaplace
