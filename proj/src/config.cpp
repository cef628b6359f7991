#include "ww/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ww {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

Real parse_real(const std::string& v, const std::string& key, int line) {
  try {
    size_t pos;
    Real r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return r;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "' expects a number, got '" + v + "'");
  }
}

int parse_int(const std::string& v, const std::string& key, int line) {
  Real r = parse_real(v, key, line);
  int i = int(std::lround(r));
  if (Real(i) != r)
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                      "' expects an integer");
  return i;
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                    "' expects on/off");
}

InitialCondition parse_ic(const std::string& v, int line) {
  InitialCondition ic;
  std::string s = trim(v);
  auto args_of = [&](const std::string& name) -> std::vector<std::string> {
    std::string inner = trim(s.substr(name.size()));
    if (inner.empty()) return {};
    if (inner.front() != '(' || inner.back() != ')')
      throw ConfigError("line " + std::to_string(line) +
                        ": malformed initial_condition arguments");
    inner = inner.substr(1, inner.size() - 2);
    std::vector<std::string> out;
    std::stringstream ss(inner);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(trim(part));
    return out;
  };
  if (s == "rest") {
    ic.kind = InitialCondition::Kind::Rest;
  } else if (s.rfind("standing_wave", 0) == 0) {
    ic.kind = InitialCondition::Kind::StandingWave;
    auto args = args_of("standing_wave");
    if (args.size() != 2)
      throw ConfigError("line " + std::to_string(line) +
                        ": standing_wave(amplitude, mode) takes two arguments");
    ic.amplitude = parse_real(args[0], "standing_wave.amplitude", line);
    ic.mode = parse_int(args[1], "standing_wave.mode", line);
  } else if (s.rfind("shear", 0) == 0) {
    ic.kind = InitialCondition::Kind::Shear;
    auto args = args_of("shear");
    if (args.size() != 1)
      throw ConfigError("line " + std::to_string(line) +
                        ": shear(omega0) takes one argument");
    ic.omega0 = parse_real(args[0], "shear.omega0", line);
  } else if (s.rfind("stream", 0) == 0) {
    ic.kind = InitialCondition::Kind::Stream;
    auto args = args_of("stream");
    if (args.size() != 1)
      throw ConfigError("line " + std::to_string(line) +
                        ": stream(c) takes one argument");
    ic.speed = parse_real(args[0], "stream.c", line);
  } else if (s.rfind("file", 0) == 0) {
    ic.kind = InitialCondition::Kind::File;
    auto args = args_of("file");
    if (args.size() != 1)
      throw ConfigError("line " + std::to_string(line) +
                        ": file(path) takes one argument");
    ic.path = args[0];
  } else {
    throw ConfigError("line " + std::to_string(line) +
                      ": unknown initial_condition '" + s + "'");
  }
  return ic;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    if (key == "grid.d") cfg.grid.d = parse_int(val, key, lineno);
    else if (key == "grid.N") cfg.grid.N = parse_int(val, key, lineno);
    else if (key == "grid.L") cfg.grid.L = parse_real(val, key, lineno);
    else if (key == "grid.Nz") cfg.grid.Nz = parse_int(val, key, lineno);
    else if (key == "grid.dealias_fraction")
      cfg.grid.dealias_fraction = parse_real(val, key, lineno);
    else if (key == "initial_condition") cfg.initial_condition = parse_ic(val, lineno);
    else if (key == "T_final") cfg.T_final = parse_real(val, key, lineno);
    else if (key == "cfl_safety") cfg.cfl_safety = parse_real(val, key, lineno);
    else if (key == "c0") cfg.c0 = parse_real(val, key, lineno);
    else if (key == "h0") cfg.h0 = parse_real(val, key, lineno);
    else if (key == "tolerance") cfg.tolerance = parse_real(val, key, lineno);
    else if (key == "curvature_p") cfg.curvature_p = parse_real(val, key, lineno);
    else if (key == "sobolev_s") cfg.sobolev_s = parse_real(val, key, lineno);
    else if (key == "filter") cfg.filter = parse_bool(val, key, lineno);
    else if (key == "snapshot_every") cfg.snapshot_every = parse_int(val, key, lineno);
    else if (key == "output_dir") cfg.output_dir = val;
    else if (key == "dn_bottom") {
      if (val == "dirichlet0") cfg.dn_bottom = DNBottom::Dirichlet0;
      else if (val == "neumann0") cfg.dn_bottom = DNBottom::Neumann0;
      else
        throw ConfigError("line " + std::to_string(lineno) +
                          ": dn_bottom must be dirichlet0 or neumann0");
    } else if (key == "elliptic_backend") {
      if (val == "direct") cfg.elliptic_backend = RunConfig::Backend::Direct;
      else if (val == "factored") cfg.elliptic_backend = RunConfig::Backend::Factored;
      else if (val == "both") cfg.elliptic_backend = RunConfig::Backend::Both;
      else
        throw ConfigError("line " + std::to_string(lineno) +
                          ": elliptic_backend must be direct, factored or both");
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
  }

  // validation
  try {
    cfg.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  if (!(cfg.T_final > 0)) throw ConfigError("T_final must be positive");
  if (!(cfg.c0 > 0)) throw ConfigError("c0 must be positive");
  if (!(cfg.h0 > 0)) throw ConfigError("h0 must be positive");
  if (!(cfg.tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (!(cfg.cfl_safety > 0)) throw ConfigError("cfl_safety must be positive");
  if (cfg.curvature_p <= 2.0 * cfg.grid.d)
    cfg.warnings.push_back("curvature_p = " + std::to_string(cfg.curvature_p) +
                           " does not exceed 2d = " +
                           std::to_string(2 * cfg.grid.d) +
                           "; the curvature monitor needs p > 2d");

  if (const char* env = std::getenv("WW_OUTPUT_DIR"); env && *env)
    cfg.output_dir = env;
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace ww
