#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "plaplace/plaplace.hpp"

using namespace plaplace;

namespace {
ProblemSpec henon_spec(double p) {
  ProblemSpec ps;
  ps.dim = 3;
  ps.p = p;
  ps.weight = {weight_kind::power, 2.0};
  ps.nonlin.q = 3.0;
  ps.mode = run_mode::eigen;
  return ps;
}
}  // namespace

TEST_CASE("eigen mode on the Henon weight satisfies its defining identities") {
  const ProblemSpec ps = henon_spec(2.0);
  const RadialGrid g = make_grid(3, 513);
  const EigenResult res = solve_eigen(g, ps);

  REQUIRE(res.converged);
  REQUIRE(is_cone_member(res.u, 0.0));
  REQUIRE(res.u.v[0] > 0.0);
  REQUIRE(std::abs(sobolev_norm_pow(res.u, ps.p) - 1.0) <= 1e-10);
  REQUIRE(res.lambda > 0.0);
  REQUIRE(std::abs(res.lambda * potential_pairing(res.u, ps) - 1.0) <= 1e-10);
  REQUIRE(res.S > 0.0);

  const VerifyReport vr = verify_solution(res.u, res.lambda, ps);
  REQUIRE(vr.weak_residual_max <= 1e-3);
  REQUIRE(vr.min_interior_slope > 0.0);

  // The maximizer history climbs (up to roundoff at stagnation).
  for (size_t k = 1; k < res.objective_history.size(); ++k)
    REQUIRE(res.objective_history[k] >=
            res.objective_history[k - 1] - 1e-14);
}

TEST_CASE("eigen profile matches the shooting oracle at the computed lambda") {
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = henon_spec(p);
    const RadialGrid g = make_grid(3, 513);
    const EigenResult res = solve_eigen(g, ps);
    REQUIRE(res.converged);
    const ShootResult sres =
        shoot(g, ps, res.lambda, 0.5 * res.u.v[0], 2.0 * res.u.v[0]);
    double dist = 0.0;
    for (int i = 0; i <= g.n; ++i)
      dist = std::max(dist, std::abs(sres.profile.v[i] - res.u.v[i]));
    INFO("p = " << p << ", L-inf distance " << dist);
    REQUIRE(dist <= 1e-3);
  }
}

TEST_CASE("eigen result is insensitive to the starting point") {
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = henon_spec(p);
    const RadialGrid g = make_grid(3, 129);
    const EigenResult a =
        solve_eigen(g, ps, sample_fn(g, [](double r) { return 1.0 + r; }));
    const EigenResult b =
        solve_eigen(g, ps, sample_fn(g, [](double r) { return 1.0 + r * r; }));
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    double dist = 0.0;
    for (int i = 0; i <= g.n; ++i)
      dist = std::max(dist, std::abs(a.u.v[i] - b.u.v[i]));
    REQUIRE(dist <= 1e-4);
  }
}

TEST_CASE("eigen output is stationary against inward cone directions") {
  // First-order optimality on the cone: moving toward any admissible
  // direction must not increase the constrained objective, i.e. the
  // Lagrangian pairing <J'(u) - lambda K'(u), v> is nonnegative up to
  // solver tolerance for cone test functions v >= 0 increasing.
  for (double p : {2.0, 3.0}) {
    const ProblemSpec ps = henon_spec(p);
    const RadialGrid g = make_grid(3, 129);
    const EigenResult res = solve_eigen(g, ps);
    REQUIRE(res.converged);
    const std::vector<double> gn = grad_sobolev_pow(res.u, ps.p);
    const std::vector<double> gi = grad_potential(res.u, ps);
    const auto pairing = [&](const std::vector<double>& v) {
      double s = 0.0;
      for (int i = 0; i <= g.n; ++i)
        s += (gn[i] / ps.p - res.lambda * gi[i]) * v[i];
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

TEST_CASE("starved iteration budget reports non-convergence") {
  ProblemSpec ps = henon_spec(2.0);
  ps.max_iter = 3;
  ps.tol = 1e-14;
  const RadialGrid g = make_grid(3, 129);
  const EigenResult res = solve_eigen(g, ps);
  REQUIRE_FALSE(res.converged);
  REQUIRE(res.iterations <= 3);
}

TEST_CASE("problem validation rejects inadmissible setups") {
  SECTION("constant weight requires the explicit flag") {
    ProblemSpec ps = henon_spec(2.0);
    ps.weight = {weight_kind::constant, 1.0};
    try {
      validate(ps);
      FAIL("expected an error");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::invalid_spec);
      REQUIRE(std::string(e.what()).find("(A)") != std::string::npos);
    }
    ps.allow_constant_weight = true;
    REQUIRE_NOTHROW(validate(ps));
  }
  SECTION("growth exponent must exceed p - 1") {
    ProblemSpec ps = henon_spec(2.0);
    ps.nonlin.q = 1.0;
    try {
      validate(ps);
      FAIL("expected an error");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::invalid_spec);
      REQUIRE(std::string(e.what()).find("(F)") != std::string::npos);
    }
  }
}
