#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plaplace::cli {

namespace {

using nlohmann::json;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

weight_kind parse_weight_kind(const std::string& s) {
  if (s == "power") return weight_kind::power;
  if (s == "affine") return weight_kind::affine;
  if (s == "exp") return weight_kind::exp;
  if (s == "constant") return weight_kind::constant;
  fail(errc::invalid_spec, "unknown weight kind '" + s + "'");
}

void apply_weight(const json& j, WeightSpec& w) {
  if (!j.is_object()) fail(errc::invalid_spec, "weight must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "kind") {
      w.kind = parse_weight_kind(it.value().get<std::string>());
    } else if (k == "alpha" || k == "beta" || k == "c") {
      w.param = it.value().get<double>();
    } else {
      fail(errc::invalid_spec, "unknown weight key '" + k + "'");
    }
  }
}

void apply_nonlinearity(const json& j, NonlinSpec& f) {
  if (!j.is_object()) fail(errc::invalid_spec, "nonlinearity must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "kind") {
      if (it.value().get<std::string>() != "power")
        fail(errc::invalid_spec, "only the power nonlinearity is available");
    } else if (k == "q") {
      f.q = it.value().get<double>();
    } else {
      fail(errc::invalid_spec, "unknown nonlinearity key '" + k + "'");
    }
  }
}

json null_or(double v, bool present) {
  if (!present) return nullptr;
  return v;
}

std::string profile_path_for(const RunConfig& cfg) {
  if (!cfg.profile_output.empty()) return cfg.profile_output;
  if (!cfg.output.empty()) return cfg.output + ".profile.csv";
  return "profile.csv";
}

std::string indexed_path(const std::string& path, size_t k) {
  const std::string suffix = ".csv";
  std::string stem = path;
  if (stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
    stem.resize(stem.size() - suffix.size());
  return stem + "_" + std::to_string(k) + suffix;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(errc::invalid_spec, "cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace

tool_mode parse_tool_mode(const std::string& s) {
  if (s == "eigen") return tool_mode::eigen;
  if (s == "fixed") return tool_mode::fixed;
  if (s == "shoot") return tool_mode::shoot;
  if (s == "verify") return tool_mode::verify;
  fail(errc::invalid_spec, "unknown mode '" + s + "'");
}

const char* tool_mode_name(tool_mode m) {
  switch (m) {
    case tool_mode::eigen: return "eigen";
    case tool_mode::fixed: return "fixed";
    case tool_mode::shoot: return "shoot";
    case tool_mode::verify: return "verify";
  }
  return "?";
}

void apply_config_keys(const nlohmann::json& j, RunConfig& cfg) {
  if (!j.is_object()) fail(errc::invalid_spec, "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "p") {
      cfg.spec.p = v.get<double>();
    } else if (k == "dim") {
      cfg.spec.dim = v.get<int>();
    } else if (k == "n") {
      cfg.spec.grid_n = v.get<int>();
    } else if (k == "mode") {
      cfg.mode = parse_tool_mode(v.get<std::string>());
    } else if (k == "weight") {
      apply_weight(v, cfg.spec.weight);
    } else if (k == "nonlinearity") {
      apply_nonlinearity(v, cfg.spec.nonlin);
    } else if (k == "tol") {
      cfg.spec.tol = v.get<double>();
    } else if (k == "max_iter") {
      cfg.spec.max_iter = v.get<int>();
    } else if (k == "allow_constant_weight") {
      cfg.spec.allow_constant_weight = v.get<bool>();
    } else if (k == "shoot_bracket") {
      if (!v.is_array() || v.size() != 2)
        fail(errc::invalid_spec, "shoot_bracket must be [lo, hi]");
      cfg.shoot_bracket = {v[0].get<double>(), v[1].get<double>()};
    } else if (k == "lambda") {
      cfg.lambda = v.get<double>();
    } else if (k == "output") {
      cfg.output = v.get<std::string>();
    } else if (k == "emit_profile") {
      cfg.emit_profile = v.get<bool>();
    } else if (k == "profile_output") {
      cfg.profile_output = v.get<std::string>();
    } else if (k == "input_profile") {
      cfg.input_profile = v.get<std::string>();
    } else if (k == "sweep") {
      if (!v.is_array()) fail(errc::invalid_spec, "sweep must be an array");
      cfg.sweep.assign(v.begin(), v.end());
    } else {
      fail(errc::invalid_spec, "unknown config key '" + k + "'");
    }
  }
}

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg;
  apply_config_keys(j, cfg);
  return cfg;
}

std::string profile_csv(const RadialFn& u) {
  const RadialGrid& g = *u.grid;
  std::string out = "r,u,slope\n";
  char buf[128];
  for (int i = 0; i <= g.n; ++i) {
    const int cell = i < g.n ? i : g.n - 1;
    const double slope = (u.v[cell + 1] - u.v[cell]) / g.h;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.node[i], u.v[i],
                  slope);
    out += buf;
  }
  return out;
}

std::vector<double> read_profile_values(std::istream& in) {
  std::vector<double> r;
  std::vector<double> u;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    if (!std::getline(row, field, ',')) continue;
    char* end = nullptr;
    const double rv = std::strtod(field.c_str(), &end);
    if (end == field.c_str()) continue;  // header or junk row
    if (!std::getline(row, field, ','))
      fail(errc::invalid_spec, "profile row with fewer than two columns");
    const double uv = std::strtod(field.c_str(), &end);
    r.push_back(rv);
    u.push_back(uv);
  }
  if (u.size() < 2) fail(errc::invalid_spec, "profile needs at least two rows");
  const size_t n = u.size() - 1;
  for (size_t i = 0; i <= n; ++i) {
    const double want = static_cast<double>(i) / static_cast<double>(n);
    if (std::abs(r[i] - want) > 1e-9)
      fail(errc::invalid_spec, "profile r column is not the uniform grid on [0,1]");
  }
  return u;
}

nlohmann::json run_single(const RunConfig& cfg) {
  const double t0 = now_ms();
  ProblemSpec ps = cfg.spec;
  ps.mode = cfg.mode == tool_mode::eigen ? run_mode::eigen : run_mode::fixed;
  validate(ps);

  json rep;
  rep["mode"] = tool_mode_name(cfg.mode);
  rep["p"] = ps.p;
  rep["dim"] = ps.dim;

  RadialFn u;
  double lambda = cfg.lambda;
  rep["c0"] = nullptr;
  rep["nehari_residual"] = nullptr;

  // The grid must outlive u (RadialFn holds a pointer into it).
  RadialGrid g;
  switch (cfg.mode) {
    case tool_mode::eigen: {
      g = make_grid(ps.dim, ps.grid_n);
      EigenResult res = solve_eigen(g, ps);
      u = res.u;
      u.grid = &g;
      lambda = res.lambda;
      rep["objective"] = res.S;
      rep["iterations"] = res.iterations;
      rep["converged"] = res.converged;
      break;
    }
    case tool_mode::fixed: {
      g = make_grid(ps.dim, ps.grid_n);
      NehariResult res = solve_fixed(g, ps);
      u = res.u;
      u.grid = &g;
      lambda = 1.0;
      rep["objective"] = res.c0;
      rep["c0"] = res.c0;
      rep["iterations"] = res.iterations;
      rep["converged"] = res.converged;
      const double np = sobolev_norm_pow(u, ps.p);
      rep["nehari_residual"] = std::abs(np - potential_pairing(u, ps)) / np;
      break;
    }
    case tool_mode::shoot: {
      g = make_grid(ps.dim, ps.grid_n);
      ShootResult res =
          shoot(g, ps, lambda, cfg.shoot_bracket.first, cfg.shoot_bracket.second);
      u = res.profile;
      u.grid = &g;
      rep["objective"] = nullptr;
      rep["iterations"] = res.rootfind_iterations;
      rep["converged"] = std::abs(res.terminal_flux) <= 1e-8;
      rep["d"] = res.d;
      rep["terminal_flux"] = res.terminal_flux;
      break;
    }
    case tool_mode::verify: {
      if (cfg.input_profile.empty())
        fail(errc::invalid_spec, "verify mode needs input_profile");
      std::ifstream in(cfg.input_profile);
      if (!in)
        fail(errc::invalid_spec, "cannot read '" + cfg.input_profile + "'");
      std::vector<double> vals = read_profile_values(in);
      g = make_grid(ps.dim, static_cast<int>(vals.size()) - 1);
      u = make_fn(g, std::move(vals));
      break;
    }
  }
  if (cfg.mode == tool_mode::verify) {
    rep["objective"] = nullptr;
    rep["iterations"] = 0;
    rep["converged"] = true;
  }

  rep["n"] = u.grid->n;
  rep["lambda"] = lambda;
  VerifyReport vr = verify_solution(u, lambda, ps);
  rep["weak_residual_max"] = vr.weak_residual_max;
  rep["min_value"] = vr.min_value;
  rep["min_interior_slope"] = vr.min_interior_slope;
  rep["wall_time_ms"] = now_ms() - t0;
  if (cfg.emit_profile) rep["profile_csv"] = profile_csv(u);
  return rep;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    json result;
    bool all_converged = true;
    if (cfg.sweep.empty()) {
      result = run_single(cfg);
      all_converged = result["converged"].get<bool>();
      if (cfg.emit_profile) {
        write_text_file(profile_path_for(cfg),
                        result["profile_csv"].get<std::string>());
        result.erase("profile_csv");
      }
    } else {
      result = json::array();
      for (size_t k = 0; k < cfg.sweep.size(); ++k) {
        RunConfig entry = cfg;
        entry.sweep.clear();
        apply_config_keys(cfg.sweep[k], entry);
        json rep = run_single(entry);
        all_converged = all_converged && rep["converged"].get<bool>();
        if (entry.emit_profile) {
          write_text_file(indexed_path(profile_path_for(entry), k),
                          rep["profile_csv"].get<std::string>());
          rep.erase("profile_csv");
        }
        result.push_back(std::move(rep));
      }
    }
    const std::string text = result.dump(2) + "\n";
    if (!cfg.output.empty()) write_text_file(cfg.output, text);
    out << text;
    return all_converged ? 0 : 2;
  } catch (const error& e) {
    diag << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace plaplace::cli
