#pragma once

#include <stdexcept>
#include <string>

namespace plaplace {

// Failure classes surfaced to callers. The CLI maps any of these to a
// structured diagnostic and a nonzero exit; library code throws and never
// prints.
enum class errc {
  invalid_spec,
  non_finite_input,
  negative_input,
  degenerate_denominator,
  zero_function,
  bracket_failure,
  no_sign_change,
  blow_up,
  zero_boundary_value,
  gradient_inconsistency,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_spec: return "InvalidSpec";
    case errc::non_finite_input: return "NonFiniteInput";
    case errc::negative_input: return "NegativeInput";
    case errc::degenerate_denominator: return "DegenerateDenominator";
    case errc::zero_function: return "ZeroFunction";
    case errc::bracket_failure: return "BracketFailure";
    case errc::no_sign_change: return "NoSignChange";
    case errc::blow_up: return "BlowUp";
    case errc::zero_boundary_value: return "ZeroBoundaryValue";
    case errc::gradient_inconsistency: return "GradientInconsistency";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) {
  throw error(c, msg);
}

}  // namespace plaplace
