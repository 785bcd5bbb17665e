// Command-line front end: flags override config-file keys one to one.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"radial p-Laplace Neumann solver"};

  std::string config_path;
  std::string mode_str;
  std::string weight_kind_str;
  std::string output;
  double p = 0, alpha = 0, beta = 0, q = 0, tol = 0;
  int dim = 0, n = 0, max_iter = 0;
  bool allow_constant = false, emit_profile = false;

  app.add_option("--config", config_path, "JSON config file");
  auto* op = app.add_option("--p", p, "exponent p (> 1)");
  auto* odim = app.add_option("--dim", dim, "space dimension N (>= 3)");
  auto* on = app.add_option("--n", n, "grid cells");
  auto* omode = app.add_option("--mode", mode_str, "eigen|fixed|shoot|verify");
  auto* owk = app.add_option("--weight-kind", weight_kind_str,
                             "power|affine|exp|constant");
  auto* oalpha = app.add_option("--alpha", alpha, "weight parameter (power)");
  auto* obeta = app.add_option("--beta", beta, "weight parameter (affine/exp)");
  auto* oq = app.add_option("--q", q, "nonlinearity exponent");
  auto* otol = app.add_option("--tol", tol, "convergence tolerance");
  auto* omax = app.add_option("--max-iter", max_iter, "iteration cap");
  auto* oacw = app.add_flag("--allow-constant-weight", allow_constant,
                            "permit a constant weight");
  auto* oout = app.add_option("--output", output, "report path");
  auto* oemit = app.add_flag("--emit-profile", emit_profile, "write profile CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Keep the documented 0/1/2 contract: --help exits 0, any flag
    // error exits 1 instead of CLI11's internal code.
    return app.exit(e) == 0 ? 0 : 1;
  }

  plaplace::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: InvalidSpec: cannot read '" << config_path << "'\n";
        return 1;
      }
      nlohmann::json j = nlohmann::json::parse(in);
      plaplace::cli::apply_config_keys(j, cfg);
    }
    if (op->count()) cfg.spec.p = p;
    if (odim->count()) cfg.spec.dim = dim;
    if (on->count()) cfg.spec.grid_n = n;
    if (omode->count()) cfg.mode = plaplace::cli::parse_tool_mode(mode_str);
    if (owk->count()) {
      nlohmann::json w = {{"kind", weight_kind_str}};
      plaplace::cli::apply_config_keys({{"weight", w}}, cfg);
    }
    if (oalpha->count()) cfg.spec.weight.param = alpha;
    if (obeta->count()) cfg.spec.weight.param = beta;
    if (oq->count()) cfg.spec.nonlin.q = q;
    if (otol->count()) cfg.spec.tol = tol;
    if (omax->count()) cfg.spec.max_iter = max_iter;
    if (oacw->count()) cfg.spec.allow_constant_weight = allow_constant;
    if (oout->count()) cfg.output = output;
    if (oemit->count()) cfg.emit_profile = emit_profile;
  } catch (const plaplace::error& e) {
    std::cerr << "error: " << plaplace::errc_name(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return plaplace::cli::run(cfg, std::cout, std::cerr);
}
