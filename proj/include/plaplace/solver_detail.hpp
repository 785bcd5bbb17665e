#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"

namespace plaplace::detail {

// Symmetric tridiagonal operator; diag has n+1 entries, off has n.
struct Tridiag {
  std::vector<double> diag, off;
};

// Discrete H^1 inner-product operator: the Hessian of (1/2)||u||^2 at p=2,
// i.e. stiffness (cell measures over h^2) plus the lumped mass. Strictly
// diagonally dominant, so the Thomas solve below is stable.
//
// Raw nodal gradients of the energy scale like the local mass ~ h r^{N-1}
// and respond to a unit step with curvature up to ~1/h^2; stepping along
// them stalls once the grid is fine. Stepping along the H^1 Riesz
// representative instead makes the iteration count essentially grid
// independent while leaving the feasible-set handling (cone projection,
// renormalization) and the line-search rule untouched.
inline Tridiag h1_operator(const RadialGrid& g) {
  Tridiag a;
  a.diag.assign(g.n + 1, 0.0);
  a.off.assign(g.n, 0.0);
  const double h2 = g.h * g.h;
  for (int i = 0; i < g.n; ++i) {
    const double k = g.cell[i] / h2;
    a.diag[i] += k;
    a.diag[i + 1] += k;
    a.off[i] = -k;
  }
  for (int i = 0; i <= g.n; ++i) a.diag[i] += g.mass[i];
  return a;
}

inline std::vector<double> solve_tridiag(const Tridiag& a,
                                         std::span<const double> rhs) {
  const int m = static_cast<int>(a.diag.size());
  std::vector<double> c(m), d(m), x(m);
  c[0] = a.off.empty() ? 0.0 : a.off[0] / a.diag[0];
  d[0] = rhs[0] / a.diag[0];
  for (int i = 1; i < m; ++i) {
    const double denom = a.diag[i] - a.off[i - 1] * c[i - 1];
    c[i] = (i < m - 1) ? a.off[i] / denom : 0.0;
    d[i] = (rhs[i] - a.off[i - 1] * d[i - 1]) / denom;
  }
  x[m - 1] = d[m - 1];
  for (int i = m - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Preconditioned direction tangent to the norm sphere: the A^{-1}
// representative of `grad` with its A^{-1}-component along `sphere_grad`
// removed, so that fixed points of the projected iteration are exactly the
// constrained stationary points for every p (not just p = 2).
inline std::vector<double> tangent_direction(const Tridiag& a,
                                             std::span<const double> grad,
                                             std::span<const double> sphere_grad) {
  std::vector<double> qg = solve_tridiag(a, grad);
  std::vector<double> qb = solve_tridiag(a, sphere_grad);
  const double denom = dot(qb, sphere_grad);
  if (denom > 0.0) {
    const double theta = dot(qg, sphere_grad) / denom;
    for (size_t i = 0; i < qg.size(); ++i) qg[i] -= theta * qb[i];
  }
  return qg;
}

}  // namespace plaplace::detail
