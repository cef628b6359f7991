#include "ww/diagnostics.hpp"

#include "ww/norms.hpp"
#include "ww/spectral_ops.hpp"

#include <cmath>

namespace ww {

bool DiagnosticsRecord::finite() const {
  for (Real v : {t, E_basic, E_s, E_symm, a_min, depth_min, curvature_L2,
                 curvature_Lp, lipschitz_v, zeta_residual, div_residual,
                 curl_residual, good_unknown_residual})
    if (!std::isfinite(v)) return false;
  return true;
}

Real basic_energy(const WaveState& s, const DynamicsParams& p) {
  const StateCache& c = ensure_cache(s, p);
  const GridSpec& g = s.grid;
  const RealArray& wz = cheb_grid(g.Nz).w;
  Real hx = std::pow(g.dx(), g.d);
  Real kinetic = 0;
  for (const StripField& comp : c.velocity) {
    RealMatrix sq = comp.values().array().square().matrix().cwiseProduct(c.map.dz_rho);
    RealArray per_level = sq.array().rowwise().sum();
    kinetic += hx * (wz * per_level).sum();
  }
  Real pe = l2_norm(s.eta);
  return kinetic + pe * pe;
}

SurfaceField mean_curvature(const SurfaceField& eta) {
  const GridSpec& g = eta.grid();
  SurfaceVector grad = gradient(eta);
  RealArray m2 = RealArray::Constant(g.num_points(), 1.0);
  for (const auto& gi : grad) m2 += gi.values().square();
  RealArray root = m2.sqrt();
  SurfaceField H(g);
  for (int a = 0; a < g.d; ++a) {
    SurfaceField flux = SurfaceField::from_values(g, grad[size_t(a)].values() / root);
    H = H + deriv(flux, a);
  }
  return H;
}

std::pair<Real, Real> curvature_norms(const SurfaceField& H, Real p) {
  return {l2_norm(H), lp_norm(H, p)};
}

Real curvature_identity_residual(const SurfaceField& eta) {
  const GridSpec& g = eta.grid();
  SurfaceVector grad = gradient(eta);
  RealArray m2 = RealArray::Constant(g.num_points(), 1.0);
  for (const auto& gi : grad) m2 += gi.values().square();
  RealArray w = m2.pow(-1.5);

  SurfaceField H = mean_curvature(eta);
  Real worst = 0;
  for (int l = 0; l < g.d; ++l) {
    SurfaceField eta_l = grad[size_t(l)];
    SurfaceField lhs(g);
    for (int j = 0; j < g.d; ++j) {
      RealArray flux = RealArray::Zero(g.num_points());
      for (int i = 0; i < g.d; ++i) {
        RealArray aij = w * (Real(i == j) * m2 -
                             grad[size_t(i)].values() * grad[size_t(j)].values());
        flux += aij * deriv(eta_l, i).values();
      }
      lhs = lhs + deriv(SurfaceField::from_values(g, std::move(flux)), j);
    }
    SurfaceField rhs = deriv(H, l);
    worst = std::max(worst, (lhs.values() - rhs.values()).abs().maxCoeff());
  }
  return worst;
}

SurfaceVector good_unknown(const WaveState& s) {
  SurfaceVector zeta = gradient(s.eta);
  SurfaceVector U;
  U.reserve(zeta.size());
  for (size_t i = 0; i < zeta.size(); ++i)
    U.push_back(s.V[i] + paraproduct(zeta[i], s.B));
  return U;
}

namespace {

// sqrt(a lambda) as an order-1/2 symbol; requires a > 0 and Re lambda
// elliptic on the grid.
SymbolField sqrt_a_lambda(const WaveState& s, const DynamicsParams& dyn) {
  const StateCache& c = ensure_cache(s, dyn);
  const SurfaceField& a = c.pressure.taylor_a;
  if (a.values().minCoeff() <= 0)
    throw TaylorSignViolation("sqrt(a lambda): Taylor coefficient not positive");
  SymbolField lambda = dn_symbol(c.map, c.coeffs);
  const GridSpec& g = s.grid;
  Real cmin = std::numeric_limits<Real>::max();
  for (Index m = 0; m < g.num_modes(); ++m) {
    Real r = g.xi_abs(m);
    if (r < 1.0) continue;
    cmin = std::min(cmin, lambda.table().col(m).real().minCoeff() / r);
  }
  if (!(cmin > 0))
    throw EllipticityViolation("sqrt(a lambda): Re lambda lost ellipticity");
  SymbolField al = symbol_product(SymbolField::from_surface(a), lambda);
  return al.map(0.5, [](Complex z) { return std::sqrt(z); });
}

SurfaceField material_applied(const SurfaceVector& V, const SurfaceField& u) {
  SurfaceField acc(u.grid());
  for (size_t a = 0; a < V.size(); ++a)
    acc = acc + paraproduct(V[a], deriv(u, int(a)));
  return acc;
}

}  // namespace

Real symmetrizer_energy(const WaveState& s, const WaveState* prev, Real dt,
                        Real sobolev_s, const DynamicsParams& dyn) {
  SymbolField root = sqrt_a_lambda(s, dyn);
  SurfaceVector U = good_unknown(s);
  std::vector<SurfaceVector> Uprev;
  SurfaceVector Up;
  if (prev) Up = good_unknown(*prev);

  Real total = 0;
  for (size_t i = 0; i < U.size(); ++i) {
    total += sobolev_norm(paradiff_apply(root, U[i]), sobolev_s - 0.5);
    SurfaceField dtU = material_applied(s.V, U[i]);
    if (prev && dt > 0)
      dtU = SurfaceField::from_values(
          s.grid, dtU.values() + (U[i].values() - Up[i].values()) / dt);
    total += sobolev_norm(dtU, sobolev_s - 0.5);
  }
  return total;
}

Real good_unknown_residual(const WaveState& cur, const WaveState& prev, Real dt,
                           const DynamicsParams& dyn) {
  const GridSpec& g = cur.grid;
  const StateCache& cc = ensure_cache(cur, dyn);
  const StateCache& cp = ensure_cache(prev, dyn);

  auto mid = [&](const SurfaceField& a, const SurfaceField& b) {
    return SurfaceField::from_values(g, 0.5 * (a.values() + b.values()));
  };

  SurfaceVector zc = gradient(cur.eta), zp = gradient(prev.eta);
  SurfaceVector Uc = good_unknown(cur), Up = good_unknown(prev);
  SurfaceField am = mid(cc.pressure.taylor_a, cp.pressure.taylor_a);
  SurfaceField Bm = mid(cur.B, prev.B);
  SurfaceVector Vm, zm, Um;
  for (int i = 0; i < g.d; ++i) {
    Vm.push_back(mid(cur.V[size_t(i)], prev.V[size_t(i)]));
    zm.push_back(mid(zc[size_t(i)], zp[size_t(i)]));
    Um.push_back(mid(Uc[size_t(i)], Up[size_t(i)]));
  }

  // (T_V - V) . grad u at the midpoint
  auto paracommuted = [&](const SurfaceField& u) {
    SurfaceField acc(g);
    for (int a = 0; a < g.d; ++a) {
      SurfaceField du = deriv(u, a);
      acc = acc + paraproduct(Vm[size_t(a)], du) - Vm[size_t(a)] * du;
    }
    return acc;
  };

  SurfaceField tvb = paracommuted(Bm);
  Real sq = 0;
  for (int i = 0; i < g.d; ++i) {
    // D_t U
    SurfaceField r = SurfaceField::from_values(
        g, (Uc[size_t(i)].values() - Up[size_t(i)].values()) / dt +
               material_applied(Vm, Um[size_t(i)]).values());
    // + T_a zeta
    r = r + paraproduct(am, zm[size_t(i)]);
    // - h1
    SurfaceField h1 = paracommuted(Vm[size_t(i)]) -
                      bony_remainder(am, zm[size_t(i)]) +
                      paraproduct(zm[size_t(i)], tvb);
    r = r - h1;
    // - [D_t, T_zeta] B
    SurfaceField tz_cur = paraproduct(zc[size_t(i)], cur.B);
    SurfaceField tz_prev = paraproduct(zp[size_t(i)], prev.B);
    SurfaceField commutator = SurfaceField::from_values(
        g,
        (tz_cur.values() - tz_prev.values()) / dt +
            material_applied(Vm, paraproduct(zm[size_t(i)], Bm)).values() -
            paraproduct(zm[size_t(i)],
                        SurfaceField::from_values(
                            g, (cur.B.values() - prev.B.values()) / dt +
                                   material_applied(Vm, Bm).values()))
                .values());
    r = r - commutator;
    Real n = l2_norm(r);
    sq += n * n;
  }
  return std::sqrt(sq);
}

DiagnosticsRecord compute_record(const WaveState& s, const WaveState* prev, Real dt,
                                 const DynamicsParams& dyn,
                                 const DiagnosticsParams& dia) {
  const StateCache& c = ensure_cache(s, dyn);
  const GridSpec& g = s.grid;
  DiagnosticsRecord r;
  r.t = s.t;
  r.E_basic = basic_energy(s, dyn);
  r.depth_min = 1.0 + s.eta.values().minCoeff();
  r.a_min = c.pressure.taylor_a.values().minCoeff();
  r.taylor_violation = r.a_min < dia.c0;

  // E_s: surface + strip Sobolev of the recovered velocity
  r.E_s = sobolev_norm(s.eta, dia.sobolev_s + 0.5);
  for (const StripField& comp : c.velocity)
    r.E_s += strip_sobolev_norm(comp, dia.sobolev_s + 0.5);

  try {
    r.E_symm = symmetrizer_energy(s, prev, dt, dia.sobolev_s, dyn);
  } catch (const TaylorSignViolation&) {
    r.E_symm = 0;
    r.taylor_violation = true;
  }

  SurfaceField H = mean_curvature(s.eta);
  std::tie(r.curvature_L2, r.curvature_Lp) = curvature_norms(H, dia.curvature_p);

  // ||v||_{W^{1,inf}}: sup of values and chain-rule physical gradient
  Real lip = 0;
  for (int j = 0; j <= g.d; ++j) {
    const StripField& comp = c.velocity[size_t(j)];
    lip = std::max(lip, comp.max_abs());
    lip = std::max(lip, physical_dy(comp, c.map).max_abs());
    for (int a = 0; a < g.d; ++a)
      lip = std::max(lip, physical_dx(comp, c.map, a).max_abs());
  }
  r.lipschitz_v = lip;

  r.div_residual = c.div_residual;
  r.curl_residual = c.curl_residual;

  // zeta-equation residual (the evolution is run through eta; this closes the
  // loop on the paralinearized form): dt zeta + V.grad zeta = GV + zeta GB + R_omega
  {
    DNOptions opts;
    opts.tolerance = dyn.tolerance;
    opts.max_iterations = dyn.max_iterations;
    VelocitySplit split = rotational_split(s, dyn);
    SurfaceVector r_om = compute_r_omega(s, split.v_om, dyn);
    DNResult GB = dn_apply(c.map, c.coeffs, s.B, DNBottom::Dirichlet0, opts);
    SurfaceVector zeta = gradient(s.eta);
    Real sq = 0;
    for (int i = 0; i < g.d; ++i) {
      DNResult GV =
          dn_apply(c.map, c.coeffs, s.V[size_t(i)], DNBottom::Dirichlet0, opts);
      SurfaceField lhs = deriv(c.dt_eta, i);
      for (int a = 0; a < g.d; ++a)
        lhs = lhs + s.V[size_t(a)] * deriv(zeta[size_t(i)], a);
      SurfaceField rhs = GV.Gf + zeta[size_t(i)] * GB.Gf + r_om[size_t(i)];
      Real n = l2_norm(lhs - rhs);
      sq += n * n;
    }
    r.zeta_residual = std::sqrt(sq);
  }

  r.good_unknown_residual =
      (prev && dt > 0) ? good_unknown_residual(s, *prev, dt, dyn) : 0.0;
  return r;
}

BreakdownReport breakdown_report(const std::vector<DiagnosticsRecord>& records,
                                 Real c0, Real h0, const std::string& abort_reason) {
  if (records.empty())
    throw std::invalid_argument("breakdown_report: no records");
  BreakdownReport rep;
  rep.abort_reason = abort_reason;
  for (const DiagnosticsRecord& r : records) {
    Real curv = std::max(r.curvature_L2, r.curvature_Lp);
    rep.curvature_sup = std::max(rep.curvature_sup, curv);
    rep.lipschitz_sup = std::max(rep.lipschitz_sup, r.lipschitz_v);
    rep.E_s_sup = std::max(rep.E_s_sup, r.E_s);
    if (!rep.taylor_first_violation && r.a_min < c0)
      rep.taylor_first_violation = r.t;
    if (!rep.depth_first_violation && r.depth_min < h0)
      rep.depth_first_violation = r.t;
  }
  rep.M = rep.curvature_sup + rep.lipschitz_sup;
  if (rep.taylor_first_violation && rep.depth_first_violation)
    rep.first_violation = *rep.taylor_first_violation <= *rep.depth_first_violation
                              ? "taylor"
                              : "depth";
  else if (rep.taylor_first_violation)
    rep.first_violation = "taylor";
  else if (rep.depth_first_violation)
    rep.first_violation = "depth";
  return rep;
}

}  // namespace ww
