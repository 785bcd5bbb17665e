#pragma once

// Run orchestration shared by the command-line tool and the test suite:
// JSON config -> solver/shooting/verification runs -> JSON report and
// optional CSV profile. Kept separate from main() so every branch is
// reachable in-process.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plaplace/plaplace.hpp"

namespace plaplace::cli {

enum class tool_mode { eigen, fixed, shoot, verify };

tool_mode parse_tool_mode(const std::string& s);
const char* tool_mode_name(tool_mode m);

struct RunConfig {
  ProblemSpec spec;
  tool_mode mode = tool_mode::fixed;
  double lambda = 1.0;  // used by shoot and verify runs; eigen/fixed set their own
  std::pair<double, double> shoot_bracket{1e-3, 10.0};
  std::string output;          // report path; empty = stdout only
  bool emit_profile = false;
  std::string profile_output;  // profile path; empty = derived from output
  std::string input_profile;   // verify mode: CSV with the candidate profile
  std::vector<nlohmann::json> sweep;  // per-entry key overrides
};

// Applies one JSON object's keys onto cfg (unknown keys rejected).
void apply_config_keys(const nlohmann::json& j, RunConfig& cfg);

// Full config from a JSON object (defaults + apply_config_keys + validation).
RunConfig parse_config(const nlohmann::json& j);

// Executes one run and returns the report object (never writes files).
nlohmann::json run_single(const RunConfig& cfg);

// Renders a profile as CSV ("r,u,slope" header; forward-difference slopes,
// repeated on the last row).
std::string profile_csv(const RadialFn& u);

// Reads the first two CSV columns (r,u); the r column must be the uniform
// grid on [0,1] implied by the row count (checked to 1e-9). Returns the u
// values; the caller supplies the grid dimension.
std::vector<double> read_profile_values(std::istream& in);

// Orchestrates a config end to end: runs (sweep-aware), writes report /
// profile files, prints the report to out, diagnostics to diag.
// Returns the process exit code: 0 converged, 1 invalid input, 2 not
// converged.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag);

}  // namespace plaplace::cli
