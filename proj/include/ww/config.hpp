#pragma once

#include "ww/core.hpp"
#include "ww/dirichlet_neumann.hpp"

#include <string>
#include <vector>

namespace ww {

struct InitialCondition {
  enum class Kind { Rest, StandingWave, Shear, Stream, File };
  Kind kind = Kind::Rest;
  Real amplitude = 0;   // standing_wave
  int mode = 1;         // standing_wave
  Real omega0 = 0;      // shear
  Real speed = 0;       // stream
  std::string path;     // file
};

struct RunConfig {
  GridSpec grid;
  InitialCondition initial_condition;
  Real T_final = 1.0;
  Real cfl_safety = 0.5;
  Real c0 = 0.05;
  Real h0 = 0.1;
  Real tolerance = 1e-10;
  Real curvature_p = 5.0;
  Real sobolev_s = 2.5;
  bool filter = true;
  int snapshot_every = 0;  // 0: final snapshot only
  std::string output_dir = "out";
  DNBottom dn_bottom = DNBottom::Dirichlet0;
  enum class Backend { Direct, Factored, Both };
  Backend elliptic_backend = Backend::Direct;

  std::vector<std::string> warnings;  // non-fatal validation notes
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value format with section dots (e.g. grid.N = 128). Unknown keys
// are rejected; missing keys take the defaults above. WW_OUTPUT_DIR in the
// environment overrides output_dir.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace ww
