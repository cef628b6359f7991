#include "ww/dirichlet_neumann.hpp"

#include "ww/spectral_ops.hpp"

namespace ww {

namespace {

StripSolution run_backend(const EllipticProblem& p, SolverBackend backend) {
  return backend == SolverBackend::Direct ? solve_direct(p) : solve_factored(p);
}

}  // namespace

SymbolField dn_symbol(const FlatteningMap& map, const EllipticCoefficients& co) {
  const GridSpec& g = map.grid;
  const int top = g.Nz - 1;

  // zeta1 = (1+|grad rho|^2)/dz_rho and zeta2 = grad rho at z = 0
  RealArray grad2 = RealArray::Zero(g.num_points());
  for (int a = 0; a < g.d; ++a)
    grad2 += map.grad_rho[size_t(a)].row(top).transpose().array().square();
  RealArray zeta1 = (1.0 + grad2) / map.dz_rho.row(top).transpose().array();

  ComplexMatrix table(g.num_points(), g.num_modes());
  for (Index m = 0; m < g.num_modes(); ++m) {
    Real xi2 = g.xi_abs2(m);
    for (Index q = 0; q < g.num_points(); ++q) {
      Real bxi = 0, zxi = 0;
      for (int a = 0; a < g.d; ++a) {
        bxi += co.beta[size_t(a)](top, q) * g.xi(m, a);
        zxi += map.grad_rho[size_t(a)](top, q) * g.xi(m, a);
      }
      Real disc = std::max<Real>(4.0 * co.alpha(top, q) * xi2 - bxi * bxi, 0);
      Complex A = 0.5 * Complex(std::sqrt(disc), -bxi);
      table(q, m) = zeta1[q] * A - Complex(0, zxi);
    }
  }
  return SymbolField(g, 1.0, std::move(table));
}

DNResult dn_apply(const FlatteningMap& map, const EllipticCoefficients& co,
                  const SurfaceField& f, DNBottom bottom, const DNOptions& opts) {
  const GridSpec& g = map.grid;
  require_same_grid(g, f.grid(), "dn_apply");

  EllipticProblem p;
  p.coeffs = co;
  p.F0 = StripField(g);
  p.top = f;
  p.bottom = SurfaceField(g);
  p.bottom_kind =
      bottom == DNBottom::Dirichlet0 ? BottomKind::Dirichlet : BottomKind::Neumann;
  p.tolerance = opts.tolerance;
  p.max_iterations = opts.max_iterations;
  StripSolution sol = run_backend(p, opts.backend);

  const int top = g.Nz - 1;
  RealArray grad2 = RealArray::Zero(g.num_points());
  for (int a = 0; a < g.d; ++a)
    grad2 += map.grad_rho[size_t(a)].row(top).transpose().array().square();
  RealArray gf = (1.0 + grad2) / map.dz_rho.row(top).transpose().array() *
                 sol.dz_top.values();
  for (int a = 0; a < g.d; ++a)
    gf -= map.grad_rho[size_t(a)].row(top).transpose().array() *
          deriv(f, a).values();

  DNResult out;
  out.Gf = SurfaceField::from_values(g, std::move(gf));
  out.phi = sol.v;
  out.dz_phi_top = sol.dz_top;
  out.lambda = dn_symbol(map, co);
  out.remainder = out.Gf - paradiff_apply(out.lambda, f);
  out.bottom = bottom;
  out.solver_residual = sol.residual;
  return out;
}

DNResult dn_apply(const SurfaceField& eta, const SurfaceField& f, DNBottom bottom,
                  const DNOptions& opts) {
  Real h0 = 1.0 + eta.values().minCoeff();
  FlatteningMap map = build_map(eta, h0);
  EllipticCoefficients co = coefficients(map);
  return dn_apply(map, co, f, bottom, opts);
}

SurfaceField dn_remainder(const DNResult& result) { return result.remainder; }

SlopeReport remainder_order_check(const SurfaceField& eta, DNBottom bottom,
                                  int k_min, int k_max, const DNOptions& opts) {
  const GridSpec& g = eta.grid();
  Real h0 = 1.0 + eta.values().minCoeff();
  FlatteningMap map = build_map(eta, h0);
  EllipticCoefficients co = coefficients(map);
  SlopeReport rep;
  for (int k = k_min; k <= k_max; ++k) {
    RealArray fv(g.num_points());
    for (Index p = 0; p < g.num_points(); ++p)
      fv[p] = std::cos(kTwoPi / g.L * k * g.x(p, 0));
    DNResult r = dn_apply(map, co, SurfaceField::from_values(g, std::move(fv)),
                          bottom, opts);
    rep.freqs.push_back(kTwoPi / g.L * k);
    rep.remainder_norms.push_back(l2_norm(r.remainder));
    rep.dn_norms.push_back(l2_norm(r.Gf));
  }
  auto slope = [](const std::vector<Real>& x, const std::vector<Real>& y) {
    const size_t n = x.size();
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
      Real lx = std::log2(x[i]), ly = std::log2(std::max(y[i], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  rep.remainder_slope = slope(rep.freqs, rep.remainder_norms);
  rep.dn_slope = slope(rep.freqs, rep.dn_norms);
  return rep;
}

std::pair<Real, Real> dn_selfadjoint_check(const SurfaceField& eta,
                                           const SurfaceField& f,
                                           const SurfaceField& g, DNBottom bottom,
                                           const DNOptions& opts) {
  Real h0 = 1.0 + eta.values().minCoeff();
  FlatteningMap map = build_map(eta, h0);
  EllipticCoefficients co = coefficients(map);
  DNResult rf = dn_apply(map, co, f, bottom, opts);
  DNResult rg = dn_apply(map, co, g, bottom, opts);
  return {inner(rf.Gf, g), inner(f, rg.Gf)};
}

Real dn_positivity_check(const SurfaceField& eta, const SurfaceField& f,
                         DNBottom bottom, const DNOptions& opts) {
  DNResult r = dn_apply(eta, f, bottom, opts);
  return inner(r.Gf, f);
}

}  // namespace ww
