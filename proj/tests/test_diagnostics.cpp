#include "doctest.h"
#include "oracles.hpp"

#include "ww/diagnostics.hpp"
#include "ww/norms.hpp"
#include "ww/spectral_ops.hpp"

using namespace ww;
using namespace wwtest;

namespace {

GridSpec grid1(int N = 64, int Nz = 33) {
  GridSpec g;
  g.d = 1;
  g.N = N;
  g.Nz = Nz;
  return g;
}

DynamicsParams params() {
  DynamicsParams p;
  p.h0 = 0.5;
  p.c0 = 0.1;
  return p;
}

WaveState wave_state(const GridSpec& g, Real amp) {
  WaveState s = WaveState::rest(g);
  s.eta = cosine(g, 1, amp);
  s.V[0] = sine(g, 1, 0.5 * amp);
  s.B = cosine(g, 1, 0.3 * amp);
  s.Vb[0] = sine(g, 1, 0.1 * amp);
  return s;
}

}  // namespace

TEST_CASE("basic energy: rest is zero, pure elevation is Parseval-exact") {
  GridSpec g = grid1(32, 17);
  DynamicsParams p = params();
  CHECK(basic_energy(WaveState::rest(g), p) == doctest::Approx(0.0));
  WaveState s = WaveState::rest(g);
  Real amp = 0.15;
  s.eta = cosine(g, 1, amp);
  Real e = basic_energy(s, p);
  CHECK(e == doctest::Approx(amp * amp * kPi).epsilon(1e-10));
}

TEST_CASE("mean curvature: flat is zero, small waves linearize") {
  GridSpec g = grid1();
  CHECK(mean_curvature(SurfaceField(g)).max_abs() == 0.0);
  SurfaceField c3 = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), 0.4));
  CHECK(mean_curvature(c3).max_abs() < 1e-14);
  for (Real eps : {1e-2, 1e-3}) {
    SurfaceField H = mean_curvature(cosine(g, 1, eps));
    CHECK((H.values() + eps * cosine(g, 1).values()).abs().maxCoeff() < 2.0 * eps * eps * eps);
    auto [l2, lp] = curvature_norms(H, 5.0);
    CHECK(l2 == doctest::Approx(eps * std::sqrt(kPi)).epsilon(1e-4));
    CHECK(lp > 0);
  }
}

TEST_CASE("curvature divergence-form identity") {
  GridSpec g = grid1(128, 9);
  for (int trial = 0; trial < 5; ++trial) {
    SurfaceField eta = random_surface(g, 4, 500 + trial);
    // normalize steepness to 0.5
    Real steep = deriv(eta, 0).max_abs();
    eta = SurfaceField::from_values(g, eta.values() * (0.5 / steep));
    CHECK(curvature_identity_residual(eta) < 1e-8);
  }
}

TEST_CASE("curvature identity in d = 2") {
  GridSpec g;
  g.d = 2;
  g.N = 64;
  g.Nz = 9;
  SurfaceField eta = random_surface(g, 2, 77);
  Real steep = std::max(deriv(eta, 0).max_abs(), deriv(eta, 1).max_abs());
  eta = SurfaceField::from_values(g, eta.values() * (0.25 / steep));
  CHECK(curvature_identity_residual(eta) < 1e-8);
}

TEST_CASE("symmetrizer energy: zero at rest, comparable to H^s on tame states") {
  GridSpec g = grid1(64, 17);
  DynamicsParams p = params();
  CHECK(symmetrizer_energy(WaveState::rest(g), nullptr, 0, 2.5, p) ==
        doctest::Approx(0.0));

  // near-rest state (a ~ 1, eta = 0) with band-limited U = V, modes >= 2
  WaveState s = WaveState::rest(g);
  RealArray vv = RealArray::Zero(g.num_points());
  for (int k = 2; k <= 8; ++k)
    for (Index q = 0; q < g.num_points(); ++q)
      vv[q] += 1e-3 / (k * k) * std::cos(k * g.x(q, 0));
  s.V[0] = SurfaceField::from_values(g, vv);
  Real sref = 2.5;
  Real es = symmetrizer_energy(s, nullptr, 0, sref, p);
  Real un = sobolev_norm(s.V[0], sref);
  CHECK(es / un > 0.5);
  CHECK(es / un < 2.0);
}

TEST_CASE("good unknown residual: zero at rest, tiny on the steady shear") {
  GridSpec g = grid1(32, 17);
  DynamicsParams p = params();
  WaveState r0 = WaveState::rest(g);
  WaveState r1 = WaveState::rest(g);
  r1.t = 0.01;
  CHECK(good_unknown_residual(r1, r0, 0.01, p) == doctest::Approx(0.0));

  WaveState sh = WaveState::rest(g);
  Real c = 0.5;
  sh.V[0] = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), c));
  sh.omega[0] = StripField::from_values(g, RealMatrix::Constant(g.Nz, g.num_points(), -c));
  WaveState sh1 = rk4_step(sh, 0.02, p);
  CHECK(good_unknown_residual(sh1, sh, 0.02, p) < 1e-8);
}

TEST_CASE("good unknown residual decays at second order in dt") {
  GridSpec g = grid1(32, 17);
  DynamicsParams p = params();
  WaveState s0 = wave_state(g, 0.02);
  // march to a generic trajectory point first
  s0 = rk4_step(s0, 0.01, p);
  std::vector<Real> dts, res;
  for (Real dt : {0.04, 0.02, 0.01}) {
    WaveState s1 = rk4_step(s0, dt, p);
    dts.push_back(dt);
    res.push_back(good_unknown_residual(s1, s0, dt, p));
  }
  Real slope = loglog_slope(dts, res);
  CHECK(slope >= 1.75);
  CHECK(res[2] < res[1]);
  CHECK(res[1] < res[0]);
}

TEST_CASE("full record: consistency residuals vanish on a compatible state") {
  // traces and vorticity of an actual irrotational field (cos x cosh(y+1),
  // sin x sinh(y+1)); the zeta/div/curl residuals are genuine zeros here
  GridSpec g = grid1(64, 33);
  DynamicsParams dyn = params();
  DiagnosticsParams dia;
  dia.c0 = dyn.c0;
  dia.h0 = dyn.h0;
  WaveState s = WaveState::rest(g);
  s.eta = cosine(g, 1, 0.05);
  RealArray V(g.num_points()), B(g.num_points()), Vb(g.num_points());
  for (Index q = 0; q < g.num_points(); ++q) {
    Real x = g.x(q, 0), y = s.eta.values()[q];
    V[q] = 0.1 * std::cos(x) * std::cosh(y + 1.0);
    B[q] = 0.1 * std::sin(x) * std::sinh(y + 1.0);
    Vb[q] = 0.1 * std::cos(x);
  }
  s.V[0] = SurfaceField::from_values(g, std::move(V));
  s.B = SurfaceField::from_values(g, std::move(B));
  s.Vb[0] = SurfaceField::from_values(g, std::move(Vb));

  DiagnosticsRecord r = compute_record(s, nullptr, 0, dyn, dia);
  CHECK(r.finite());
  CHECK(r.E_basic > 0);
  CHECK(r.depth_min == doctest::Approx(0.95));
  CHECK(r.a_min == doctest::Approx(1.0).epsilon(0.3));
  CHECK_FALSE(r.taylor_violation);
  CHECK(r.zeta_residual < 1e-6);
  CHECK(r.div_residual < 1e-7);
  CHECK(r.curl_residual < 1e-7);
}

TEST_CASE("full record stays finite on an incompatible state") {
  // arbitrary tuple: the consistency residuals are nonzero monitors here
  GridSpec g = grid1(32, 17);
  DynamicsParams dyn = params();
  DiagnosticsParams dia;
  WaveState s = wave_state(g, 0.05);
  DiagnosticsRecord r = compute_record(s, nullptr, 0, dyn, dia);
  CHECK(r.finite());
  CHECK(r.zeta_residual > 0);
  CHECK(r.curl_residual > 0);
}

TEST_CASE("zeta residual closes on the shear state") {
  GridSpec g = grid1(32, 17);
  DynamicsParams dyn = params();
  DiagnosticsParams dia;
  WaveState sh = WaveState::rest(g);
  sh.V[0] = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), 0.7));
  sh.omega[0] = StripField::from_values(g, RealMatrix::Constant(g.Nz, g.num_points(), -0.7));
  DiagnosticsRecord r = compute_record(sh, nullptr, 0, dyn, dia);
  CHECK(r.zeta_residual < 1e-8);
}

TEST_CASE("breakdown report: rest trajectory and threshold violations") {
  GridSpec g = grid1(32, 17);
  DynamicsParams dyn = params();
  DiagnosticsParams dia;
  dia.c0 = 0.5;
  dia.h0 = 0.1;
  WaveState s = WaveState::rest(g);
  std::vector<DiagnosticsRecord> recs;
  for (int i = 0; i < 3; ++i) {
    WaveState si = s;
    si.t = 0.1 * i;
    recs.push_back(compute_record(si, nullptr, 0, dyn, dia));
  }
  BreakdownReport rep = breakdown_report(recs, 0.5, 0.1);
  CHECK(rep.curvature_sup == doctest::Approx(0.0));
  CHECK(rep.first_violation.empty());
  CHECK(rep.M == doctest::Approx(0.0));

  // configured c0 above the realized a_min = 1: violation at t = 0
  BreakdownReport rep2 = breakdown_report(recs, 2.0, 0.1);
  CHECK(rep2.first_violation == "taylor");
  CHECK(rep2.taylor_first_violation.has_value());
  CHECK(*rep2.taylor_first_violation == doctest::Approx(0.0));

  CHECK_THROWS_AS(breakdown_report({}, 1, 1), std::invalid_argument);
}
