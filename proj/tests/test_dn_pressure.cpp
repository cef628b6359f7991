#include "doctest.h"
#include "oracles.hpp"

#include "ww/dirichlet_neumann.hpp"
#include "ww/norms.hpp"
#include "ww/pressure.hpp"
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
}  // namespace

TEST_CASE("flat-surface DN symbols: k coth k and k tanh k") {
  GridSpec g = grid1(64, 65);
  SurfaceField eta(g);
  for (int k : {1, 2, 4, 8, 12}) {
    DNResult rd = dn_apply(eta, cosine(g, k), DNBottom::Dirichlet0);
    Real kk = Real(k);
    Real want_d = kk * std::cosh(kk) / std::sinh(kk);
    Real got_d = rd.Gf.values()[0];  // x = 0 where cos(kx) = 1
    CHECK(std::abs(got_d - want_d) <= 1e-9 * want_d);

    DNResult rn = dn_apply(eta, cosine(g, k), DNBottom::Neumann0);
    Real want_n = kk * std::tanh(kk);
    CHECK(std::abs(rn.Gf.values()[0] - want_n) <= 1e-9 * std::max(want_n, 1.0));
  }
}

TEST_CASE("constant data: Neumann bottom annihilates, Dirichlet bottom passes through") {
  GridSpec g = grid1();
  SurfaceField eta(g);
  SurfaceField c3 = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), 3.0));
  DNResult rn = dn_apply(eta, c3, DNBottom::Neumann0);
  CHECK(rn.Gf.max_abs() < 1e-11);
  // Dirichlet-0 bottom: constant extension is linear in y, G(const) = const
  DNResult rd = dn_apply(eta, c3, DNBottom::Dirichlet0);
  CHECK((rd.Gf.values() - 3.0).abs().maxCoeff() < 1e-11);
}

TEST_CASE("dn_symbol reduces to |xi| for flat and constant eta") {
  GridSpec g = grid1();
  for (Real c : {0.0, 0.4}) {
    SurfaceField eta = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), c));
    FlatteningMap map = build_map(eta, 1.0 + c);
    SymbolField lam = dn_symbol(map, coefficients(map));
    for (Index m = 0; m < g.num_modes(); ++m) {
      CHECK(std::abs(lam.table()(3, m) - Complex(g.xi_abs(m), 0)) < 1e-12);
    }
  }
}

TEST_CASE("Re lambda keeps a positive lower bound for moderate steepness") {
  GridSpec g = grid1(128, 33);
  SurfaceField eta = cosine(g, 2, 0.15);  // steepness 0.3
  FlatteningMap map = build_map(eta, 0.5);
  SymbolField lam = dn_symbol(map, coefficients(map));
  Real c = std::numeric_limits<Real>::max();
  for (Index m = 0; m < g.num_modes(); ++m) {
    Real r = g.xi_abs(m);
    if (r < 1.0) continue;
    c = std::min(c, lam.table().col(m).real().minCoeff() / r);
  }
  CHECK(c > 0.0);
}

TEST_CASE("decomposition G f = T_lambda f + R(eta) f is exact by construction") {
  GridSpec g = grid1();
  SurfaceField eta = cosine(g, 1, 0.1);
  SurfaceField f = random_surface(g, 12, 5);
  DNResult r = dn_apply(eta, f, DNBottom::Dirichlet0);
  SurfaceField recon = paradiff_apply(r.lambda, f) + r.remainder;
  CHECK((recon.values() - r.Gf.values()).abs().maxCoeff() < 1e-13);
}

TEST_CASE("flat remainder decays exponentially against the multiplier part") {
  GridSpec g = grid1(64, 65);
  SurfaceField eta(g);
  FlatteningMap map = build_map(eta, 1.0);
  EllipticCoefficients co = coefficients(map);
  // R(0)f at mode k is (k coth k - k) f_hat (Dirichlet) / (k tanh k - k) (Neumann)
  for (int k : {4, 6, 8}) {
    DNResult rd = dn_apply(map, co, cosine(g, k), DNBottom::Dirichlet0);
    Real ratio_d = l2_norm(rd.remainder) / l2_norm(rd.Gf);
    CHECK(ratio_d < 2.2 * std::exp(-2.0 * k) + 1e-9);
    DNResult rn = dn_apply(map, co, cosine(g, k), DNBottom::Neumann0);
    Real ratio_n = l2_norm(rn.remainder) / l2_norm(rn.Gf);
    CHECK(ratio_n < 2.2 * std::exp(-2.0 * k) + 1e-9);
  }
}

TEST_CASE("paralinearization gain: remainder slope trails the DN slope") {
  GridSpec g = grid1(128, 65);
  SurfaceField eta = cosine(g, 1, 0.1);
  SlopeReport rep = remainder_order_check(eta, DNBottom::Dirichlet0, 2, g.N / 4);
  CHECK(rep.remainder_slope <= rep.dn_slope - 0.75);
}

TEST_CASE("self-adjointness and positivity at moderate steepness") {
  GridSpec g = grid1(64, 65);
  SurfaceField eta = cosine(g, 1, 0.1);
  DNOptions opts;
  opts.tolerance = 1e-10;
  for (int trial = 0; trial < 3; ++trial) {
    SurfaceField f = random_surface(g, 8, 40 + trial);
    SurfaceField h = random_surface(g, 8, 80 + trial);
    auto [a, b] = dn_selfadjoint_check(eta, f, h, DNBottom::Dirichlet0, opts);
    CHECK(std::abs(a - b) <= 1e-8 * l2_norm(f) * l2_norm(h));
    CHECK(dn_positivity_check(eta, f, DNBottom::Dirichlet0, opts) >= -1e-10);
  }
}

TEST_CASE("pressure at rest: P = -y, a = 1, flat bottom gradient") {
  GridSpec g = grid1(32, 17);
  FlatteningMap map = build_map(SurfaceField(g), 1.0);
  EllipticCoefficients co = coefficients(map);
  StripVector v(size_t(g.d + 1), StripField(g));
  PressureResult pr = solve_pressure(map, co, v);
  CHECK((pr.taylor_a.values() - 1.0).abs().maxCoeff() < 1e-10);
  CHECK(pr.bottom_grad[0].max_abs() < 1e-11);
  CHECK((pr.P.values() + map.rho).array().abs().maxCoeff() < 1e-11);
  TaylorCheck tc = taylor_sign_check(pr, 0.5);
  CHECK(tc.min_a == doctest::Approx(1.0));
  CHECK_FALSE(tc.violated);
  CHECK(taylor_sign_check(pr, 2.0).violated);
}

TEST_CASE("pressure with a raised flat surface stays hydrostatic") {
  GridSpec g = grid1(32, 17);
  Real c = 0.25;
  SurfaceField eta = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), c));
  FlatteningMap map = build_map(eta, 1.0);
  EllipticCoefficients co = coefficients(map);
  StripVector v(size_t(g.d + 1), StripField(g));
  PressureResult pr = solve_pressure(map, co, v);
  CHECK((pr.taylor_a.values() - 1.0).abs().maxCoeff() < 1e-9);
}

TEST_CASE("uniform horizontal stream is hydrostatic") {
  GridSpec g = grid1(32, 17);
  FlatteningMap map = build_map(SurfaceField(g), 1.0);
  EllipticCoefficients co = coefficients(map);
  StripVector v{StripField::from_values(g, RealMatrix::Constant(g.Nz, g.num_points(), 0.7)),
                StripField(g)};
  PressureResult pr = solve_pressure(map, co, v);
  CHECK((pr.taylor_a.values() - 1.0).abs().maxCoeff() < 1e-10);
}

TEST_CASE("flat DN symbols in d = 2 follow the radial wavenumber") {
  GridSpec g;
  g.d = 2;
  g.N = 16;
  g.Nz = 33;
  SurfaceField eta(g);
  FlatteningMap map = build_map(eta, 1.0);
  EllipticCoefficients co = coefficients(map);
  // f = cos(k . x) for k = (1,0) and (1,1)
  for (auto [k0, k1] : {std::pair{1, 0}, std::pair{1, 1}}) {
    RealArray f(g.num_points());
    for (Index p = 0; p < g.num_points(); ++p)
      f[p] = std::cos(k0 * g.x(p, 0) + k1 * g.x(p, 1));
    Real kr = std::sqrt(Real(k0 * k0 + k1 * k1));
    DNResult rd = dn_apply(map, co, SurfaceField::from_values(g, f),
                           DNBottom::Dirichlet0);
    Real want = kr * std::cosh(kr) / std::sinh(kr);
    CHECK(std::abs(rd.Gf.values()[0] - want) <= 1e-8 * want);
    DNResult rn = dn_apply(map, co, SurfaceField::from_values(g, f),
                           DNBottom::Neumann0);
    CHECK(std::abs(rn.Gf.values()[0] - kr * std::tanh(kr)) <= 1e-8);
  }
}
