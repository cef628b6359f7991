// Command-line driver: run a configured simulation, run the invariant check
// suite, or extract plot columns from a diagnostics CSV.

#include "CLI11.hpp"

#include "ww/diagnostics.hpp"
#include "ww/io.hpp"
#include "ww/littlewood_paley.hpp"
#include "ww/norms.hpp"
#include "ww/paradiff.hpp"
#include "ww/spectral_ops.hpp"

#include <iostream>
#include <random>

namespace {

using namespace ww;

int cmd_run(const std::string& config_path) {
  RunConfig cfg = parse_config(config_path);
  for (const std::string& w : cfg.warnings) std::cout << "warning: " << w << "\n";
  RunSummary sum = run_simulation(cfg);
  std::cout << "steps: " << sum.steps << "\n"
            << "diagnostics: " << sum.csv_path << "\n"
            << "final snapshot: " << sum.snapshot_path << "\n";
  if (!sum.records.empty()) {
    const BreakdownReport& r = sum.report;
    std::cout << "breakdown monitor: M = " << r.M
              << " (curvature " << r.curvature_sup << ", lipschitz "
              << r.lipschitz_sup << ")\n";
    if (r.taylor_first_violation)
      std::cout << "taylor-sign violation first at t = " << *r.taylor_first_violation
                << "\n";
    if (r.depth_first_violation)
      std::cout << "depth violation first at t = " << *r.depth_first_violation << "\n";
    if (!r.first_violation.empty())
      std::cout << "first violated hypothesis: " << r.first_violation << "\n";
  }
  if (!sum.abort_reason.empty())
    std::cout << "aborted: " << sum.abort_reason << "\n";
  return sum.exit_code;
}

SurfaceField random_band(const GridSpec& g, int band, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<Real> gauss;
  RealArray v = RealArray::Zero(g.num_points());
  for (int k = 1; k <= band; ++k) {
    Real a = gauss(rng) / (1 + k * k), b = gauss(rng) / (1 + k * k);
    for (Index p = 0; p < g.num_points(); ++p)
      v[p] += a * std::cos(kTwoPi / g.L * k * g.x(p, 0)) +
              b * std::sin(kTwoPi / g.L * k * g.x(p, 0));
  }
  return SurfaceField::from_values(g, std::move(v));
}

int cmd_check(const std::string& config_path) {
  GridSpec g;
  g.N = 64;
  g.Nz = 33;
  DNBottom bottom = DNBottom::Dirichlet0;
  bool both_bottoms = true;
  if (!config_path.empty()) {
    RunConfig cfg = parse_config(config_path);
    g = cfg.grid;
    bottom = cfg.dn_bottom;
    both_bottoms = false;
  }
  int failures = 0;
  auto verdict = [&](const std::string& name, bool ok, Real value) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << value << ")\n";
    if (!ok) ++failures;
  };

  {  // Littlewood-Paley partition of unity
    SurfaceField u = random_band(g, g.N / 3, 11);
    DyadicDecomposition dec = decompose(u);
    RealArray sum = RealArray::Zero(g.num_points());
    for (auto& [k, blk] : dec.blocks) sum += blk.values();
    Real err = (sum - u.values()).abs().maxCoeff() / u.values().abs().maxCoeff();
    verdict("littlewood-paley reconstruction", err <= 1e-13, err);
  }
  {  // Bony decomposition
    Real worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      SurfaceField a = random_band(g, g.N / 4, 100 + trial);
      SurfaceField u = random_band(g, g.N / 4, 200 + trial);
      SurfaceField lhs = paraproduct(a, u) + paraproduct(u, a) + bony_remainder(u, a);
      worst = std::max(worst, (lhs.values() - (a.values() * u.values())).abs().maxCoeff() /
                                  (linf_norm(a) * linf_norm(u)));
    }
    verdict("bony decomposition", worst <= 1e-12, worst);
  }
  {  // factorization identities
    SurfaceField eta = random_band(g, 3, 5);
    eta = SurfaceField::from_values(g, 0.1 * eta.values());
    EllipticCoefficients co = coefficients(build_map(eta, 0.5));
    FactorizationSymbols sym = factorization_symbols(co);
    Real worst = 0;
    for (int j = 0; j < g.Nz; j += 4) {
      const ComplexMatrix& a = sym.a_sym[size_t(j)].table();
      const ComplexMatrix& A = sym.A_sym[size_t(j)].table();
      for (Index m = 0; m < g.num_modes(); ++m) {
        Real xi2 = g.xi_abs2(m);
        for (Index q = 0; q < g.num_points(); q += 4) {
          worst = std::max(worst, std::abs(a(q, m) * A(q, m) + co.alpha(j, q) * xi2) /
                                      (1.0 + xi2));
          Real bxi = co.beta[0](j, q) * g.xi(m, 0);
          worst = std::max(worst,
                           std::abs(a(q, m) + A(q, m) + Complex(0, bxi)) /
                               (1.0 + std::sqrt(xi2)));
        }
      }
    }
    verdict("factorization identities", worst <= 1e-12, worst);
  }
  {  // flat-surface DN symbols
    SurfaceField eta(g);
    Real worst = 0;
    for (int k = 1; k <= std::min(8, g.N / 4); ++k) {
      RealArray f(g.num_points());
      for (Index p = 0; p < g.num_points(); ++p)
        f[p] = std::cos(kTwoPi / g.L * k * g.x(p, 0));
      Real kw = kTwoPi / g.L * k;
      if (both_bottoms || bottom == DNBottom::Dirichlet0) {
        DNResult r = dn_apply(eta, SurfaceField::from_values(g, f), DNBottom::Dirichlet0);
        Real want = kw * std::cosh(kw) / std::sinh(kw);
        worst = std::max(worst, std::abs(r.Gf.values()[0] - want) / want);
      }
      if (both_bottoms || bottom == DNBottom::Neumann0) {
        DNResult r = dn_apply(eta, SurfaceField::from_values(g, f), DNBottom::Neumann0);
        Real want = kw * std::tanh(kw);
        worst = std::max(worst, std::abs(r.Gf.values()[0] - want) / want);
      }
    }
    verdict("flat dirichlet-neumann symbols", worst <= 1e-6, worst);
  }
  {  // rest fixed point and Taylor coefficient
    WaveState s = WaveState::rest(g);
    DynamicsParams dp;
    dp.h0 = 0.5;
    StateDerivative d = assemble_rhs(s, dp);
    Real n = l2_norm(d.d_eta) + l2_norm(d.d_B) + l2_norm(d.d_V[0]) + l2_norm(d.d_Vb[0]);
    verdict("rest state fixed point", n <= 1e-10, n);
    verdict("rest Taylor coefficient", std::abs(d.a_min - 1.0) <= 1e-10,
            std::abs(d.a_min - 1.0));
  }
  {  // curvature divergence-form identity (band and steepness sized so the
     // spectral tail of (1+|grad eta|^2)^{-3/2} clears the grid)
    SurfaceField eta = random_band(g, 2, 17);
    Real steep = deriv(eta, 0).max_abs();
    eta = SurfaceField::from_values(g, eta.values() * (0.25 / steep));
    Real res = curvature_identity_residual(eta);
    verdict("curvature divergence identity", res <= 1e-8, res);
  }
  std::cout << (failures == 0 ? "all checks passed" : "checks FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral free-surface Euler simulator"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "run a simulation from a config file");
  run->add_option("config", run_config, "path to the config file")->required();

  std::string check_config;
  CLI::App* check = app.add_subcommand("check", "run the invariant check suite");
  check->add_option("config", check_config, "optional config for grid/DN choices");

  std::string csv_path, field;
  CLI::App* plot = app.add_subcommand("plot-data", "extract a (t, value) column");
  plot->add_option("csv", csv_path, "diagnostics CSV")->required();
  plot->add_option("field", field, "record field name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config);
    if (check->parsed()) return cmd_check(check_config);
    if (plot->parsed()) {
      std::string out = ww::emit_plot_data(csv_path, field);
      std::cout << out << "\n";
      return 0;
    }
  } catch (const ww::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
