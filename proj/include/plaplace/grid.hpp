#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "plaplace/errors.hpp"

namespace plaplace {

// Uniform grid on [0,1] carrying the radial measure |S^{N-1}| r^{N-1} dr.
//
// Nodal masses integrate the piecewise-linear interpolant exactly: on each
// cell [a,b] the hat pieces are integrated against r^{N-1} in closed form
// using the moments M0 = (b^N - a^N)/N and M1 = (b^{N+1} - a^{N+1})/(N+1).
// Consequently sum(mass) equals the ball volume |S^{N-1}|/N up to roundoff,
// and quadrature of node samples is exact for the linear interpolant.
//
// `cell[i]` is the plain measure of cell i (integral of r^{N-1} scaled by
// the sphere area); the gradient part of the Sobolev energy treats the
// per-cell difference quotient as constant and weights it by cell[i].
struct RadialGrid {
  int dim = 0;
  int n = 0;  // number of intervals; n+1 nodes
  double h = 0.0;
  double sphere_area = 0.0;          // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  std::vector<double> node;          // node[i] = i/n
  std::vector<double> mass;          // nodal quadrature masses, size n+1
  std::vector<double> cell;          // cell measures, size n

  double ball_measure() const { return sphere_area / dim; }
};

inline double sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi_v<double>, 0.5 * dim) /
         std::tgamma(0.5 * dim);
}

inline RadialGrid make_grid(int dim, int n) {
  if (dim < 3) fail(errc::invalid_spec, "grid dimension must be >= 3");
  if (n < 3) fail(errc::invalid_spec, "grid needs at least 3 intervals");

  RadialGrid g;
  g.dim = dim;
  g.n = n;
  g.h = 1.0 / n;
  g.sphere_area = sphere_area(dim);
  g.node.resize(n + 1);
  g.mass.assign(n + 1, 0.0);
  g.cell.resize(n);
  for (int i = 0; i <= n; ++i) g.node[i] = static_cast<double>(i) / n;

  const double N = dim;
  for (int i = 0; i < n; ++i) {
    const double a = g.node[i];
    const double b = g.node[i + 1];
    const double m0 = (std::pow(b, N) - std::pow(a, N)) / N;
    const double m1 = (std::pow(b, N + 1) - std::pow(a, N + 1)) / (N + 1);
    const double hcell = b - a;
    g.cell[i] = g.sphere_area * m0;
    // left hat piece (b - r)/h and right hat piece (r - a)/h against r^{N-1}
    g.mass[i] += g.sphere_area * (b * m0 - m1) / hcell;
    g.mass[i + 1] += g.sphere_area * (m1 - a * m0) / hcell;
  }
  return g;
}

// A function sampled on the nodes of a grid. The grid must outlive the
// function; solvers and the CLI keep one grid per run.
struct RadialFn {
  const RadialGrid* grid = nullptr;
  std::vector<double> v;
};

inline RadialFn make_fn(const RadialGrid& g, std::vector<double> values) {
  if (static_cast<int>(values.size()) != g.n + 1)
    fail(errc::invalid_spec, "sample count does not match grid");
  return RadialFn{&g, std::move(values)};
}

template <class F>
RadialFn sample_fn(const RadialGrid& g, F&& f) {
  std::vector<double> v(g.n + 1);
  for (int i = 0; i <= g.n; ++i) v[i] = f(g.node[i]);
  return RadialFn{&g, std::move(v)};
}

}  // namespace plaplace
