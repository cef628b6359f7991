#include "ww/io.hpp"

#include "ww/spectral_ops.hpp"

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ww {

namespace {

constexpr char kMagic[4] = {'W', 'W', 'S', 'N'};
constexpr uint32_t kVersion = 1;

std::string fmt(Real v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void write_raw(std::ostream& out, const void* p, size_t n) {
  out.write(reinterpret_cast<const char*>(p), std::streamsize(n));
}

struct FieldRef {
  std::string name;
  const RealMatrix* strip = nullptr;
  const RealArray* surface = nullptr;
};

std::vector<FieldRef> field_list(const WaveState& s) {
  std::vector<FieldRef> out;
  out.push_back({"eta", nullptr, &s.eta.values()});
  for (size_t i = 0; i < s.V.size(); ++i)
    out.push_back({"V" + std::to_string(i), nullptr, &s.V[i].values()});
  out.push_back({"B", nullptr, &s.B.values()});
  for (size_t i = 0; i < s.Vb.size(); ++i)
    out.push_back({"Vb" + std::to_string(i), nullptr, &s.Vb[i].values()});
  for (size_t i = 0; i < s.omega.size(); ++i)
    out.push_back({"omega" + std::to_string(i), &s.omega[i].values(), nullptr});
  return out;
}

}  // namespace

void write_snapshot(const std::string& path, const WaveState& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);

  std::ostringstream header;
  header << "d=" << s.grid.d << "\nN=" << s.grid.N << "\nL=" << fmt(s.grid.L)
         << "\nNz=" << s.grid.Nz
         << "\ndealias_fraction=" << fmt(s.grid.dealias_fraction)
         << "\nt=" << fmt(s.t) << "\n";
  auto fields = field_list(s);
  for (const FieldRef& f : fields) {
    Index rows = f.strip ? f.strip->rows() : 1;
    Index cols = f.strip ? f.strip->cols() : f.surface->size();
    header << "field=" << f.name << " rows=" << rows << " cols=" << cols << "\n";
  }
  std::string h = header.str();

  write_raw(out, kMagic, 4);
  uint32_t ver = kVersion;
  write_raw(out, &ver, 4);
  uint64_t hlen = h.size();
  write_raw(out, &hlen, 8);
  write_raw(out, h.data(), h.size());
  for (const FieldRef& f : fields) {
    if (f.strip)
      write_raw(out, f.strip->data(), sizeof(Real) * size_t(f.strip->size()));
    else
      write_raw(out, f.surface->data(), sizeof(Real) * size_t(f.surface->size()));
  }
}

WaveState read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_snapshot: bad magic in " + path);
  uint32_t ver = 0;
  in.read(reinterpret_cast<char*>(&ver), 4);
  if (ver != kVersion)
    throw std::runtime_error("read_snapshot: unsupported version " +
                             std::to_string(ver));
  uint64_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), 8);
  std::string header(hlen, '\0');
  in.read(header.data(), std::streamsize(hlen));

  GridSpec g;
  Real t = 0;
  struct FieldMeta {
    std::string name;
    Index rows, cols;
  };
  std::vector<FieldMeta> fields;
  std::istringstream hs(header);
  std::string line;
  while (std::getline(hs, line)) {
    if (line.rfind("field=", 0) == 0) {
      FieldMeta fm;
      std::istringstream ls(line);
      std::string tok;
      ls >> tok;
      fm.name = tok.substr(6);
      ls >> tok;
      fm.rows = std::stoll(tok.substr(5));
      ls >> tok;
      fm.cols = std::stoll(tok.substr(5));
      fields.push_back(fm);
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "d") g.d = std::stoi(val);
    else if (key == "N") g.N = std::stoi(val);
    else if (key == "L") g.L = std::stod(val);
    else if (key == "Nz") g.Nz = std::stoi(val);
    else if (key == "dealias_fraction") g.dealias_fraction = std::stod(val);
    else if (key == "t") t = std::stod(val);
  }
  g.validate();

  WaveState s = WaveState::rest(g);
  s.t = t;
  for (const FieldMeta& fm : fields) {
    std::vector<Real> buf(size_t(fm.rows * fm.cols));
    in.read(reinterpret_cast<char*>(buf.data()),
            std::streamsize(sizeof(Real) * buf.size()));
    if (!in) throw std::runtime_error("read_snapshot: truncated payload");
    auto as_surface = [&]() {
      RealArray a = Eigen::Map<RealArray>(buf.data(), Index(buf.size()));
      return SurfaceField::from_values(g, std::move(a));
    };
    auto as_strip = [&]() {
      RealMatrix m = Eigen::Map<RealMatrix>(buf.data(), fm.rows, fm.cols);
      return StripField::from_values(g, std::move(m));
    };
    if (fm.name == "eta") s.eta = as_surface();
    else if (fm.name == "B") s.B = as_surface();
    else if (fm.name.rfind("Vb", 0) == 0) s.Vb[size_t(std::stoi(fm.name.substr(2)))] = as_surface();
    else if (fm.name.rfind("V", 0) == 0) s.V[size_t(std::stoi(fm.name.substr(1)))] = as_surface();
    else if (fm.name.rfind("omega", 0) == 0)
      s.omega[size_t(std::stoi(fm.name.substr(5)))] = as_strip();
    else
      throw std::runtime_error("read_snapshot: unknown field " + fm.name);
  }
  return s;
}

const char* kDiagnosticsHeader =
    "t,E_basic,E_s,E_symm,a_min,depth_min,curvature_L2,curvature_Lp,"
    "lipschitz_v,zeta_residual,div_residual,curl_residual,"
    "good_unknown_residual,taylor_violation";

void write_diagnostics(const std::string& path,
                       const std::vector<DiagnosticsRecord>& records,
                       const std::string& abort_reason) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_diagnostics: cannot open " + path);
  out << kDiagnosticsHeader << "\n";
  for (const DiagnosticsRecord& r : records) {
    out << fmt(r.t) << ',' << fmt(r.E_basic) << ',' << fmt(r.E_s) << ','
        << fmt(r.E_symm) << ',' << fmt(r.a_min) << ',' << fmt(r.depth_min) << ','
        << fmt(r.curvature_L2) << ',' << fmt(r.curvature_Lp) << ','
        << fmt(r.lipschitz_v) << ',' << fmt(r.zeta_residual) << ','
        << fmt(r.div_residual) << ',' << fmt(r.curl_residual) << ','
        << fmt(r.good_unknown_residual) << ',' << (r.taylor_violation ? 1 : 0)
        << "\n";
  }
  if (!abort_reason.empty()) out << "# abort: " << abort_reason << "\n";
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_diagnostics: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kDiagnosticsHeader)
    throw std::runtime_error("read_diagnostics: unexpected header");
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<Real> vals;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 14)
      throw std::runtime_error("read_diagnostics: malformed row");
    DiagnosticsRecord r;
    r.t = vals[0];
    r.E_basic = vals[1];
    r.E_s = vals[2];
    r.E_symm = vals[3];
    r.a_min = vals[4];
    r.depth_min = vals[5];
    r.curvature_L2 = vals[6];
    r.curvature_Lp = vals[7];
    r.lipschitz_v = vals[8];
    r.zeta_residual = vals[9];
    r.div_residual = vals[10];
    r.curl_residual = vals[11];
    r.good_unknown_residual = vals[12];
    r.taylor_violation = vals[13] != 0;
    out.push_back(r);
  }
  return out;
}

std::string emit_plot_data(const std::string& csv_path, const std::string& field) {
  std::vector<std::string> names;
  {
    std::stringstream ss(kDiagnosticsHeader);
    std::string cell;
    while (std::getline(ss, cell, ',')) names.push_back(cell);
  }
  auto it = std::find(names.begin(), names.end(), field);
  if (it == names.end() || field == "t") {
    std::string valid;
    for (size_t i = 1; i < names.size(); ++i)
      valid += (i > 1 ? ", " : "") + names[i];
    throw std::runtime_error("emit_plot_data: unknown field '" + field +
                             "'; valid fields: " + valid);
  }
  size_t col = size_t(it - names.begin());
  std::vector<DiagnosticsRecord> recs = read_diagnostics(csv_path);

  std::filesystem::path out_path =
      std::filesystem::path(csv_path).parent_path() / (field + ".dat");
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("emit_plot_data: cannot open " + out_path.string());
  for (const DiagnosticsRecord& r : recs) {
    const Real cols[14] = {r.t, r.E_basic, r.E_s, r.E_symm, r.a_min, r.depth_min,
                           r.curvature_L2, r.curvature_Lp, r.lipschitz_v,
                           r.zeta_residual, r.div_residual, r.curl_residual,
                           r.good_unknown_residual,
                           r.taylor_violation ? 1.0 : 0.0};
    out << fmt(r.t) << ' ' << fmt(cols[col]) << "\n";
  }
  return out_path.string();
}

WaveState initial_state(const RunConfig& cfg) {
  const GridSpec& g = cfg.grid;
  WaveState s = WaveState::rest(g);
  using K = InitialCondition::Kind;
  switch (cfg.initial_condition.kind) {
    case K::Rest:
      break;
    case K::StandingWave: {
      RealArray eta(g.num_points());
      for (Index p = 0; p < g.num_points(); ++p)
        eta[p] = cfg.initial_condition.amplitude *
                 std::cos(kTwoPi / g.L * cfg.initial_condition.mode * g.x(p, 0));
      s.eta = SurfaceField::from_values(g, std::move(eta));
      break;
    }
    case K::Shear: {
      // constant vorticity w0 with compatible traces: v = (-w0 (y+1), 0)
      Real w0 = cfg.initial_condition.omega0;
      s.V[0] = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), -w0));
      s.omega[0] =
          StripField::from_values(g, RealMatrix::Constant(g.Nz, g.num_points(), w0));
      break;
    }
    case K::Stream: {
      Real c = cfg.initial_condition.speed;
      s.V[0] = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), c));
      s.Vb[0] = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), c));
      break;
    }
    case K::File: {
      WaveState loaded = read_snapshot(cfg.initial_condition.path);
      if (!loaded.grid.same_as(g))
        throw ConfigError("initial_condition file grid does not match config grid");
      return loaded;
    }
  }
  return s;
}

RunSummary run_simulation(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  DynamicsParams dyn;
  dyn.h0 = cfg.h0;
  dyn.c0 = cfg.c0;
  dyn.tolerance = cfg.tolerance;
  dyn.max_iterations = 400;
  dyn.filter = cfg.filter;
  dyn.cfl_safety = cfg.cfl_safety;
  dyn.backend = cfg.elliptic_backend == RunConfig::Backend::Factored
                    ? SolverBackend::Factored
                    : SolverBackend::Direct;
  dyn.cross_check = cfg.elliptic_backend == RunConfig::Backend::Both;

  DiagnosticsParams dia;
  dia.sobolev_s = cfg.sobolev_s;
  dia.curvature_p = cfg.curvature_p;
  dia.c0 = cfg.c0;
  dia.h0 = cfg.h0;

  RunSummary sum;
  WaveState state = initial_state(cfg);

  auto abort_with = [&](int code, const std::string& reason) {
    sum.exit_code = code;
    sum.abort_reason = reason;
  };

  try {
    sum.records.push_back(compute_record(state, nullptr, 0, dyn, dia));
  } catch (const DepthViolation& e) {
    abort_with(2, std::string("depth violation: ") + e.what());
  } catch (const NoConvergence& e) {
    abort_with(4, std::string("solver failure: ") + e.what());
  }

  while (sum.exit_code == 0 && state.t < cfg.T_final - 1e-12) {
    try {
      Real dt = std::min(cfl_timestep(state, dyn), cfg.T_final - state.t);
      WaveState next = rk4_step(state, dt, dyn);
      if (!next.finite()) {
        abort_with(3, "NaN detected in the evolved state");
        break;
      }
      DiagnosticsRecord rec = compute_record(next, &state, dt, dyn, dia);
      if (!rec.finite()) {
        abort_with(3, "NaN detected in diagnostics");
        break;
      }
      state = next;
      sum.records.push_back(rec);
      ++sum.steps;
      if (cfg.snapshot_every > 0 && sum.steps % cfg.snapshot_every == 0) {
        write_snapshot(
            (fs::path(cfg.output_dir) / ("snapshot_" + std::to_string(sum.steps) + ".wwsn"))
                .string(),
            state);
      }
    } catch (const DepthViolation& e) {
      abort_with(2, std::string("depth violation: ") + e.what());
    } catch (const NoConvergence& e) {
      abort_with(4, std::string("solver failure: ") + e.what());
    }
  }
  sum.snapshot_path = (fs::path(cfg.output_dir) / "final.wwsn").string();
  write_snapshot(sum.snapshot_path, state);
  sum.csv_path = (fs::path(cfg.output_dir) / "diagnostics.csv").string();
  write_diagnostics(sum.csv_path, sum.records, sum.abort_reason);
  if (!sum.records.empty())
    sum.report = breakdown_report(sum.records, cfg.c0, cfg.h0, sum.abort_reason);
  else
    sum.report.abort_reason = sum.abort_reason;
  return sum;
}

}  // namespace ww
