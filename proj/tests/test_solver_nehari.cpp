#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracle_helpers.hpp"
#include "plaplace/plaplace.hpp"

using namespace plaplace;

namespace {
constexpr double pi = std::numbers::pi;

ProblemSpec fixed_spec(double p, weight_kind wk, double wparam) {
  ProblemSpec ps;
  ps.dim = 3;
  ps.p = p;
  ps.weight = {wk, wparam};
  ps.nonlin.q = 3.0;
  ps.mode = run_mode::fixed;
  return ps;
}
}  // namespace

TEST_CASE("scale map: closed form, bisection, and homogeneity") {
  std::mt19937 rng(2024);
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = fixed_spec(p, weight_kind::power, 2.0);
    const RadialGrid g = make_grid(3, 33);
    for (int rep = 0; rep < 50; ++rep) {
      const RadialFn u = oracle::random_cone_fn(g, rng);
      const double t0 = nehari_scale(u, ps);
      REQUIRE(t0 > 0.0);
      const double tb = nehari_scale_bisect(u, ps);
      REQUIRE(std::abs(t0 - tb) <= 1e-10 * t0);
      // scaling the argument by c divides the root by c
      for (double c : {0.5, 2.0, 7.3}) {
        RadialFn cu{u.grid, u.v};
        for (double& x : cu.v) x *= c;
        REQUIRE(std::abs(nehari_scale(cu, ps) - t0 / c) <= 1e-10 * t0 / c);
      }
      // the root actually closes the gap
      REQUIRE(std::abs(nehari_gap(u, t0, ps)) <=
              1e-9 * sobolev_norm_pow(u, p) * std::pow(t0, p));
    }
  }
  SECTION("zero function has no fiber root") {
    const ProblemSpec ps = fixed_spec(2.0, weight_kind::power, 2.0);
    const RadialGrid g = make_grid(3, 33);
    try {
      nehari_scale(sample_fn(g, [](double) { return 0.0; }), ps);
      FAIL("expected an error");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::zero_function);
    }
  }
}

TEST_CASE("constant-weight problem recovers the constant solution") {
  ProblemSpec ps = fixed_spec(2.0, weight_kind::constant, 1.0);
  ps.allow_constant_weight = true;
  const RadialGrid g = make_grid(3, 129);
  const NehariResult res =
      solve_fixed(g, ps, sample_fn(g, [](double r) { return 0.4 + r; }));
  REQUIRE(res.converged);
  for (int i = 0; i <= g.n; ++i) REQUIRE(std::abs(res.u.v[i] - 1.0) <= 1e-4);
  REQUIRE(std::abs(res.c0 - pi / 3.0) <= 1e-3);
}

TEST_CASE("fixed-mode minimizer lies on the constraint set") {
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = fixed_spec(p, weight_kind::power, 2.0);
    const RadialGrid g = make_grid(3, 257);
    const NehariResult res = solve_fixed(g, ps);
    REQUIRE(res.converged);
    REQUIRE(res.c0 > 0.0);
    REQUIRE(sobolev_norm(res.u, p) >= 0.1);
    REQUIRE(is_cone_member(res.u, 0.0));

    const double np = sobolev_norm_pow(res.u, p);
    REQUIRE(std::abs(np - potential_pairing(res.u, ps)) <= 1e-8 * np);
    REQUIRE(std::abs(nehari_scale(res.u, ps) - 1.0) <= 1e-12);

    // minimization history descends
    for (size_t k = 1; k < res.objective_history.size(); ++k)
      REQUIRE(res.objective_history[k] <=
              res.objective_history[k - 1] + 1e-14);
  }
}

TEST_CASE("fixed-mode profile matches the shooting oracle at lambda = 1") {
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = fixed_spec(p, weight_kind::power, 2.0);
    const RadialGrid g = make_grid(3, 257);
    const NehariResult res = solve_fixed(g, ps);
    REQUIRE(res.converged);
    const ShootResult sres =
        shoot(g, ps, 1.0, 0.5 * res.u.v[0], 2.0 * res.u.v[0]);
    double dist = 0.0;
    for (int i = 0; i <= g.n; ++i)
      dist = std::max(dist, std::abs(sres.profile.v[i] - res.u.v[i]));
    INFO("p = " << p << ", L-inf distance " << dist);
    REQUIRE(dist <= 1e-3);
  }
}

TEST_CASE("energy level dominates the norm lower bound") {
  struct Cfg {
    double p;
    weight_kind wk;
    double wparam;
  };
  const Cfg cfgs[] = {{2.0, weight_kind::power, 2.0},
                      {3.0, weight_kind::power, 2.0},
                      {2.0, weight_kind::affine, 1.0},
                      {2.0, weight_kind::exp, 1.0}};
  for (const Cfg& c : cfgs) {
    const ProblemSpec ps = fixed_spec(c.p, c.wk, c.wparam);
    const RadialGrid g = make_grid(3, 129);
    const NehariResult res = solve_fixed(g, ps);
    REQUIRE(res.converged);
    const double gamma = ps.nonlin.gamma();
    const double bound =
        (1.0 / ps.p - 1.0 / gamma) * sobolev_norm_pow(res.u, ps.p);
    INFO(weight_kind_name(c.wk) << " p=" << c.p);
    REQUIRE(res.c0 >= bound - 1e-12);
    // power nonlinearities make the restricted level exactly this expression
    REQUIRE(std::abs(res.c0 - bound) <= 1e-8 * std::max(1.0, res.c0));
  }
}

TEST_CASE("fixed-mode output is stationary against cone directions") {
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = fixed_spec(p, weight_kind::power, 2.0);
    const RadialGrid g = make_grid(3, 129);
    const NehariResult res = solve_fixed(g, ps);
    REQUIRE(res.converged);
    const std::vector<double> gn = grad_sobolev_pow(res.u, ps.p);
    const std::vector<double> gi = grad_potential(res.u, ps);
    const auto pairing = [&](const std::vector<double>& v) {
      double s = 0.0;
      for (int i = 0; i <= g.n; ++i) s += (gn[i] / ps.p - gi[i]) * v[i];
      return s;
    };
    std::vector<double> ones(g.n + 1, 1.0), lin(g.n + 1), sq(g.n + 1);
    for (int i = 0; i <= g.n; ++i) {
      lin[i] = g.node[i];
      sq[i] = g.node[i] * g.node[i];
    }
    REQUIRE(pairing(ones) >= -1e-6);
    REQUIRE(pairing(lin) >= -1e-6);
    REQUIRE(pairing(sq) >= -1e-6);
    REQUIRE(pairing(res.u.v) >= -1e-6);
  }
}

TEST_CASE("reduced energy gradient matches finite differences") {
  // The reduced objective p(u) = J(t0(u) u) has gradient t0 J'(t0 u) by the
  // envelope identity; check it against central differences away from the
  // constraint-root singularity.
  const ProblemSpec ps = fixed_spec(2.0, weight_kind::power, 2.0);
  const RadialGrid g = make_grid(3, 25);
  std::mt19937 rng(5);
  const RadialFn u = oracle::random_cone_fn(g, rng);
  const detail::FiberEval fe = detail::fiber_energy(u, ps);
  const std::vector<double> grad = detail::fiber_energy_grad(u, fe.t0, ps);
  const double fd_h = 1e-6;
  for (int i = 0; i <= g.n; i += 4) {
    RadialFn up{u.grid, u.v}, um{u.grid, u.v};
    up.v[i] += fd_h;
    um.v[i] -= fd_h;
    const double fd = (detail::fiber_energy(up, ps).e -
                       detail::fiber_energy(um, ps).e) /
                      (2 * fd_h);
    REQUIRE(std::abs(fd - grad[i]) <= 1e-4 * std::max(1.0, std::abs(grad[i])));
  }
}
