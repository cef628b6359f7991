#pragma once

#include "ww/config.hpp"
#include "ww/diagnostics.hpp"

#include <string>
#include <vector>

namespace ww {

// Binary snapshot: magic "WWSN", u32 version, length-prefixed text header,
// then per-field little-endian f64 arrays. Round trips bit-exactly.
void write_snapshot(const std::string& path, const WaveState& s);
WaveState read_snapshot(const std::string& path);

// diagnostics.csv: fixed column order, shortest round-trip decimals, one row
// per accepted step; aborted runs end with a "# abort: ..." comment row.
extern const char* kDiagnosticsHeader;
void write_diagnostics(const std::string& path,
                       const std::vector<DiagnosticsRecord>& records,
                       const std::string& abort_reason = "");
std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path);

// Two-column (t, value) text file for one record field, written next to the
// CSV as <field>.dat; returns the output path. Unknown fields list the valid
// names in the error.
std::string emit_plot_data(const std::string& csv_path, const std::string& field);

struct RunSummary {
  int exit_code = 0;  // 0 ok, 2 depth violation, 3 NaN, 4 solver failure
  std::string abort_reason;
  int steps = 0;
  std::vector<DiagnosticsRecord> records;
  BreakdownReport report;
  std::string csv_path;
  std::string snapshot_path;
};

WaveState initial_state(const RunConfig& cfg);

RunSummary run_simulation(const RunConfig& cfg);

}  // namespace ww
