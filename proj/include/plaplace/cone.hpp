#pragma once

#include <span>
#include <utility>
#include <vector>

#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"

namespace plaplace {

// Evidence that a projected iterate is feasible: both fields are >= 0 by
// construction (pooled blocks share one stored double, so inner forward
// differences are exactly zero; the clamp makes values exactly nonnegative).
struct ConeCertificate {
  double min_value = 0.0;
  double min_forward_difference = 0.0;
};

// Weighted least-squares isotonic (nondecreasing) fit, pool-adjacent-
// violators with back-merging. Single forward pass; merges only on strict
// violations so an already monotone input is copied bitwise, which makes
// the projection exactly idempotent.
inline void isotonic_fit(std::span<const double> v, std::span<const double> w,
                         std::span<double> out) {
  struct block {
    double wsum, wvsum, value;
    int len;
  };
  const int n = static_cast<int>(v.size());
  std::vector<block> st;
  st.reserve(n);
  for (int i = 0; i < n; ++i) {
    block b{w[i], w[i] * v[i], v[i], 1};
    while (!st.empty() && st.back().value > b.value) {
      b.wsum += st.back().wsum;
      b.wvsum += st.back().wvsum;
      b.len += st.back().len;
      b.value = b.wvsum / b.wsum;
      st.pop_back();
    }
    st.push_back(b);
  }
  int i = 0;
  for (const block& b : st)
    for (int k = 0; k < b.len; ++k) out[i++] = b.value;
}

// Metric projection onto the monotone nonnegative cone in the mass-weighted
// l2 metric: isotonic fit with the quadrature masses, then clamp at zero.
// For a uniform lower bound the clamp after the isotonic fit is the exact
// two-constraint projection, not an approximation.
inline std::pair<RadialFn, ConeCertificate> project_cone(const RadialFn& u) {
  detail::require_grid(u);
  detail::require_finite(u.v, "project_cone");
  const RadialGrid& g = *u.grid;
  RadialFn out{&g, std::vector<double>(g.n + 1)};
  isotonic_fit(u.v, g.mass, out.v);
  for (double& x : out.v)
    if (x < 0.0) x = 0.0;

  ConeCertificate cert;
  cert.min_value = out.v[0];
  cert.min_forward_difference = out.v.size() > 1
                                    ? out.v[1] - out.v[0]
                                    : 0.0;
  for (int i = 0; i <= g.n; ++i) {
    if (out.v[i] < cert.min_value) cert.min_value = out.v[i];
    if (i < g.n) {
      const double d = out.v[i + 1] - out.v[i];
      if (d < cert.min_forward_difference) cert.min_forward_difference = d;
    }
  }
  return {std::move(out), cert};
}

inline bool is_cone_member(const RadialFn& u, double tol) {
  detail::require_grid(u);
  for (double x : u.v)
    if (!(x >= -tol)) return false;
  for (size_t i = 0; i + 1 < u.v.size(); ++i)
    if (!(u.v[i + 1] - u.v[i] >= -tol)) return false;
  return true;
}

// u / ||u||_{W^{1,p}}.
inline RadialFn normalize_sphere(const RadialFn& u, double p) {
  const double norm = sobolev_norm(u, p);
  if (!(norm > 0.0) || !std::isfinite(norm))
    fail(errc::zero_function, "normalize_sphere: zero or degenerate norm");
  RadialFn out{u.grid, u.v};
  for (double& x : out.v) x /= norm;
  return out;
}

}  // namespace plaplace
