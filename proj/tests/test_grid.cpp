#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracle_helpers.hpp"
#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"

using namespace plaplace;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("grid nodes are uniform and masses are positive") {
  const RadialGrid g = make_grid(3, 17);
  REQUIRE(g.n == 17);
  for (int i = 0; i <= g.n; ++i) {
    REQUIRE(g.node[i] == static_cast<double>(i) / g.n);
    REQUIRE(g.mass[i] > 0.0);
  }
  for (int i = 0; i < g.n; ++i) REQUIRE(g.cell[i] > 0.0);
}

TEST_CASE("total quadrature mass equals the ball measure for every grid") {
  for (int dim : {3, 4, 5}) {
    for (int n : {3, 4, 7, 64, 513, 1000}) {
      const RadialGrid g = make_grid(dim, n);
      double total = 0;
      for (double m : g.mass) total += m;
      const double ball = g.sphere_area / dim;
      REQUIRE(std::abs(total - ball) <= 1e-12 * ball);
      REQUIRE(g.ball_measure() == ball);
    }
  }
}

TEST_CASE("quad of the constant 1 gives the volume of the unit ball") {
  const RadialGrid g = make_grid(3, 17);
  const RadialFn one = sample_fn(g, [](double) { return 1.0; });
  REQUIRE(std::abs(quad(g, one.v) - 4.0 * pi / 3.0) <= 1e-12 * (4.0 * pi / 3.0));
}

TEST_CASE("quad of r^2 converges to 4pi/5 at second order") {
  const double exact = 4.0 * pi / 5.0;
  double err_prev = 0;
  for (int n : {512, 1024}) {
    const RadialGrid g = make_grid(3, n);
    const RadialFn f = sample_fn(g, [](double r) { return r * r; });
    const double err = std::abs(quad(g, f.v) - exact);
    REQUIRE(err <= 1e-5);
    if (n == 1024) {
      const double rate = err_prev / err;
      REQUIRE(rate >= 3.5);
      REQUIRE(rate <= 4.5);
    }
    err_prev = err;
  }
}

TEST_CASE("quad agrees with an independent Gauss reference on e^r") {
  // quad integrates the piecewise-linear interpolant of the samples exactly;
  // the reference integrates the same interpolant with per-cell Gauss rules.
  const RadialGrid g = make_grid(3, 1024);
  const RadialFn f = sample_fn(g, [](double r) { return std::exp(r); });
  const double ref = oracle::interpolant_ball_integral(g, f.v);
  REQUIRE(std::abs(quad(g, f.v) - ref) <= 1e-11 * std::abs(ref));
}

TEST_CASE("quad rejects non-finite samples") {
  const RadialGrid g = make_grid(3, 8);
  RadialFn f = sample_fn(g, [](double r) { return r; });
  f.v[3] = std::nan("");
  try {
    quad(g, f.v);
    FAIL("expected an error");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::non_finite_input);
  }
}

TEST_CASE("sample_fn evaluates at the nodes") {
  const RadialGrid g = make_grid(4, 9);
  const RadialFn f = sample_fn(g, [](double r) { return 3.0 * r - 1.0; });
  for (int i = 0; i <= g.n; ++i) REQUIRE(f.v[i] == 3.0 * g.node[i] - 1.0);
}
