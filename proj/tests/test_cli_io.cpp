#include "doctest.h"
#include "oracles.hpp"

#include "ww/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace ww;
using namespace wwtest;
namespace fs = std::filesystem;

namespace {

std::string tmpdir() {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("ww_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::create_directories(p);
  return p.string();
}

std::string write_text(const std::string& dir, const std::string& name,
                       const std::string& text) {
  fs::path p = fs::path(dir) / name;
  std::ofstream out(p);
  out << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config: minimal file fills defaults") {
  std::string dir = tmpdir();
  std::string path = write_text(dir, "min.cfg",
                                "grid.N = 32\n"
                                "grid.Nz = 17\n"
                                "T_final = 0.5\n");
  RunConfig cfg = parse_config(path);
  CHECK(cfg.grid.N == 32);
  CHECK(cfg.cfl_safety == doctest::Approx(0.5));
  CHECK(cfg.filter);
  CHECK(cfg.tolerance == doctest::Approx(1e-10));
  CHECK(cfg.warnings.empty());
}

TEST_CASE("config: validation errors name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config_text("T_final = -1\n"),
                       "T_final must be positive", ConfigError);
  CHECK_THROWS_AS(parse_config_text("nonsense = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("grid.N = 48\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("initial_condition = whirl(1)\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("grid.N == 64\n"), ConfigError);
}

TEST_CASE("config: small curvature exponent warns but proceeds") {
  RunConfig cfg = parse_config_text("curvature_p = 1.5\n");
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("curvature_p") != std::string::npos);
}

TEST_CASE("config: initial conditions parse") {
  RunConfig cfg = parse_config_text("initial_condition = standing_wave(1e-4, 2)\n");
  CHECK(cfg.initial_condition.kind == InitialCondition::Kind::StandingWave);
  CHECK(cfg.initial_condition.amplitude == doctest::Approx(1e-4));
  CHECK(cfg.initial_condition.mode == 2);
  cfg = parse_config_text("initial_condition = shear(0.3)\n");
  CHECK(cfg.initial_condition.kind == InitialCondition::Kind::Shear);
  cfg = parse_config_text("initial_condition = stream(1.2)\n");
  CHECK(cfg.initial_condition.speed == doctest::Approx(1.2));
}

TEST_CASE("WW_OUTPUT_DIR overrides the configured output directory") {
  setenv("WW_OUTPUT_DIR", "/tmp/ww_env_dir", 1);
  RunConfig cfg = parse_config_text("output_dir = somewhere\n");
  CHECK(cfg.output_dir == "/tmp/ww_env_dir");
  unsetenv("WW_OUTPUT_DIR");
  cfg = parse_config_text("output_dir = somewhere\n");
  CHECK(cfg.output_dir == "somewhere");
}

TEST_CASE("snapshot round trip is bit-exact") {
  GridSpec g;
  g.N = 32;
  g.Nz = 17;
  WaveState s = WaveState::rest(g);
  std::mt19937 rng(3);
  std::normal_distribution<Real> gauss;
  for (Index p = 0; p < g.num_points(); ++p) {
    s.eta.mutable_values()[p] = 0.05 * gauss(rng);
    s.B.mutable_values()[p] = gauss(rng);
    s.V[0].mutable_values()[p] = gauss(rng);
    s.Vb[0].mutable_values()[p] = gauss(rng);
  }
  for (int j = 0; j < g.Nz; ++j)
    for (Index p = 0; p < g.num_points(); ++p)
      s.omega[0].mutable_values()(j, p) = gauss(rng);
  s.t = 0.7071067811865476;

  std::string dir = tmpdir();
  std::string path = (fs::path(dir) / "state.wwsn").string();
  write_snapshot(path, s);
  WaveState r = read_snapshot(path);
  CHECK(r.t == s.t);
  CHECK((r.eta.values() == s.eta.values()).all());
  CHECK((r.B.values() == s.B.values()).all());
  CHECK((r.V[0].values() == s.V[0].values()).all());
  CHECK((r.Vb[0].values() == s.Vb[0].values()).all());
  CHECK((r.omega[0].values().array() == s.omega[0].values().array()).all());

  // second write is byte-identical
  std::string path2 = (fs::path(dir) / "state2.wwsn").string();
  write_snapshot(path2, r);
  CHECK(slurp(path) == slurp(path2));

  // version mismatch rejected
  std::string bytes = slurp(path);
  bytes[4] = 9;
  std::string bad = write_text(dir, "bad.wwsn", bytes);
  CHECK_THROWS(read_snapshot(bad));
}

TEST_CASE("rest run: exit 0, constant diagnostics rows, deterministic CSV") {
  std::string dir = tmpdir();
  RunConfig cfg = parse_config_text(
      "grid.N = 32\ngrid.Nz = 17\nT_final = 0.3\nh0 = 0.5\n"
      "output_dir = " + dir + "\n");
  RunSummary sum = run_simulation(cfg);
  CHECK(sum.exit_code == 0);
  CHECK(sum.steps > 0);
  CHECK(fs::exists(sum.csv_path));
  CHECK(fs::exists(sum.snapshot_path));
  std::vector<DiagnosticsRecord> recs = read_diagnostics(sum.csv_path);
  CHECK(recs.size() == sum.records.size());
  for (const auto& r : recs) {
    CHECK(r.E_basic == doctest::Approx(0.0));
    CHECK(r.a_min == doctest::Approx(1.0));
  }
  // determinism: the same config reproduces the CSV byte for byte
  std::string first = slurp(sum.csv_path);
  RunSummary sum2 = run_simulation(cfg);
  CHECK(slurp(sum2.csv_path) == first);

  // plot data extraction
  std::string dat = emit_plot_data(sum.csv_path, "a_min");
  std::ifstream in(dat);
  Real t, v;
  int rows = 0;
  while (in >> t >> v) {
    CHECK(v == doctest::Approx(1.0));
    ++rows;
  }
  CHECK(rows == int(recs.size()));
  CHECK_THROWS_WITH_AS(emit_plot_data(sum.csv_path, "bogus"),
                       doctest::Contains("valid fields"), std::runtime_error);
}

TEST_CASE("depth-violating initial data aborts with code 2 and a final snapshot") {
  std::string dir = tmpdir();
  RunConfig cfg = parse_config_text(
      "grid.N = 32\ngrid.Nz = 17\nT_final = 1\nh0 = 0.95\n"
      "initial_condition = standing_wave(0.9, 1)\n"
      "output_dir = " + dir + "\n");
  RunSummary sum = run_simulation(cfg);
  CHECK(sum.exit_code == 2);
  CHECK(fs::exists(sum.snapshot_path));
  std::string csv = slurp(sum.csv_path);
  CHECK(csv.find("# abort: depth violation") != std::string::npos);
  WaveState final = read_snapshot(sum.snapshot_path);
  CHECK(final.eta.max_abs() == doctest::Approx(0.9));
}

TEST_CASE("file initial condition restarts from a snapshot") {
  std::string dir = tmpdir();
  GridSpec g;
  g.N = 32;
  g.Nz = 17;
  WaveState s = WaveState::rest(g);
  s.eta = cosine(g, 1, 0.01);
  std::string snap = (fs::path(dir) / "ic.wwsn").string();
  write_snapshot(snap, s);
  RunConfig cfg = parse_config_text(
      "grid.N = 32\ngrid.Nz = 17\nT_final = 0.1\nh0 = 0.5\n"
      "initial_condition = file(" + snap + ")\n"
      "output_dir = " + dir + "\n");
  RunSummary sum = run_simulation(cfg);
  CHECK(sum.exit_code == 0);
  CHECK(sum.records.front().depth_min == doctest::Approx(0.99));
}

TEST_CASE("backend cross-check mode runs the wave with both solvers") {
  std::string dir = tmpdir();
  RunConfig cfg = parse_config_text(
      "grid.N = 32\ngrid.Nz = 17\nT_final = 0.15\nh0 = 0.5\n"
      "initial_condition = standing_wave(1e-3, 1)\n"
      "elliptic_backend = both\n"
      "output_dir = " + dir + "\n");
  RunSummary sum = run_simulation(cfg);
  CHECK(sum.exit_code == 0);
  CHECK(sum.steps > 0);
}

TEST_CASE("solver failure on extreme steepness exits with code 4") {
  std::string dir = tmpdir();
  RunConfig cfg = parse_config_text(
      "grid.N = 64\ngrid.Nz = 17\nT_final = 1\nh0 = 0.5\n"
      "initial_condition = standing_wave(0.45, 8)\n"
      "output_dir = " + dir + "\n");
  RunSummary sum = run_simulation(cfg);
  CHECK(sum.exit_code == 4);
  CHECK(sum.abort_reason.find("solver failure") != std::string::npos);
}
