#pragma once

#include <cmath>
#include <string>

#include "plaplace/errors.hpp"

namespace plaplace {

// Radially increasing weight families. All of them are positive a.e. on
// (0,1]; only `constant` (and `power` with alpha == 0) fail the
// "non-constant" admissibility condition (A) and are gated behind
// ProblemSpec::allow_constant_weight, which exists for sanity checks against
// known constant solutions.
enum class weight_kind { power, affine, exp, constant };

struct WeightSpec {
  weight_kind kind = weight_kind::power;
  // power: a(r) = r^param     (param >= 0)
  // affine: a(r) = 1 + param*r (param > 0)
  // exp:    a(r) = e^(param*r) (param > 0)
  // constant: a(r) = param     (param > 0)
  double param = 2.0;
};

inline double weight_at(const WeightSpec& w, double r) {
  switch (w.kind) {
    case weight_kind::power: return std::pow(r, w.param);
    case weight_kind::affine: return 1.0 + w.param * r;
    case weight_kind::exp: return std::exp(w.param * r);
    case weight_kind::constant: return w.param;
  }
  return 0.0;
}

// Value of the weight as r -> 0+, used by the shooting startup expansion.
inline double weight_at_origin(const WeightSpec& w) {
  switch (w.kind) {
    case weight_kind::power: return w.param == 0.0 ? 1.0 : 0.0;
    case weight_kind::affine: return 1.0;
    case weight_kind::exp: return 1.0;
    case weight_kind::constant: return w.param;
  }
  return 0.0;
}

inline bool weight_is_constant(const WeightSpec& w) {
  return w.kind == weight_kind::constant ||
         (w.kind == weight_kind::power && w.param == 0.0);
}

inline const char* weight_kind_name(weight_kind k) {
  switch (k) {
    case weight_kind::power: return "power";
    case weight_kind::affine: return "affine";
    case weight_kind::exp: return "exp";
    case weight_kind::constant: return "constant";
  }
  return "?";
}

// Pure power nonlinearity f(s) = s^q for s >= 0, F(s) = s^(q+1)/(q+1).
// Admissibility (F): f continuous, positive on (0,inf), f(0) = 0 and
// f(s)/s^(p-1) strictly increasing; for powers this is exactly q > p-1,
// which also yields the superquadraticity constant gamma = q+1 > p used by
// the fixed-mode energy bound.
struct NonlinSpec {
  double q = 3.0;
  double gamma() const { return q + 1.0; }
};

inline double nonlin_f(const NonlinSpec& nl, double s) {
  return std::pow(s, nl.q);
}

inline double nonlin_F(const NonlinSpec& nl, double s) {
  return std::pow(s, nl.q + 1.0) / (nl.q + 1.0);
}

// Even extension f(|s|), only used by the shooting integrator which may
// step through transiently negative states while hunting for the initial
// height.
inline double nonlin_f_even(const NonlinSpec& nl, double s) {
  return std::pow(std::abs(s), nl.q);
}

enum class run_mode { eigen, fixed };

struct ProblemSpec {
  int dim = 3;          // ambient dimension N >= 3
  double p = 2.0;       // exponent of the p-Laplacian, p > 1
  WeightSpec weight;
  NonlinSpec nonlin;
  run_mode mode = run_mode::fixed;
  int grid_n = 513;     // number of grid intervals on [0,1]
  double tol = 1e-8;
  int max_iter = 20000;
  bool allow_constant_weight = false;
};

// Throws errc::invalid_spec with an actionable message on any violated
// admissibility condition.
inline void validate(const ProblemSpec& ps) {
  if (ps.dim < 3) fail(errc::invalid_spec, "dim must be >= 3");
  if (!(ps.p > 1.0) || !std::isfinite(ps.p))
    fail(errc::invalid_spec, "p must satisfy 1 < p < inf");
  if (ps.grid_n < 3) fail(errc::invalid_spec, "n must be >= 3 grid intervals");
  if (!(ps.tol > 0.0)) fail(errc::invalid_spec, "tol must be positive");
  if (ps.max_iter <= 0) fail(errc::invalid_spec, "max_iter must be positive");

  switch (ps.weight.kind) {
    case weight_kind::power:
      if (!(ps.weight.param >= 0.0))
        fail(errc::invalid_spec, "power weight needs alpha >= 0");
      break;
    case weight_kind::affine:
      if (!(ps.weight.param > 0.0))
        fail(errc::invalid_spec, "affine weight needs beta > 0");
      break;
    case weight_kind::exp:
      if (!(ps.weight.param > 0.0))
        fail(errc::invalid_spec, "exp weight needs beta > 0");
      break;
    case weight_kind::constant:
      if (!(ps.weight.param > 0.0))
        fail(errc::invalid_spec, "constant weight needs c > 0");
      break;
  }
  if (weight_is_constant(ps.weight) && !ps.allow_constant_weight)
    fail(errc::invalid_spec,
         "constant weight violates admissibility condition (A) "
         "(weight must be non-constant and radially increasing); "
         "pass allow_constant_weight to run sanity checks anyway");

  if (!(ps.nonlin.q > ps.p - 1.0))
    fail(errc::invalid_spec,
         "nonlinearity exponent q = " + std::to_string(ps.nonlin.q) +
             " violates assumption (F): need q > p-1 = " +
             std::to_string(ps.p - 1.0) +
             " so that f(s)/s^(p-1) is strictly increasing");
}

}  // namespace plaplace
