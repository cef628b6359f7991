#include "doctest.h"
#include "oracles.hpp"

#include "ww/chebyshev.hpp"
#include "ww/littlewood_paley.hpp"
#include "ww/norms.hpp"
#include "ww/spectral_ops.hpp"

#include <limits>

using namespace ww;
using namespace wwtest;

namespace {
const Real kInf = std::numeric_limits<Real>::infinity();

GridSpec grid1(int N = 64, int Nz = 17) {
  GridSpec g;
  g.d = 1;
  g.N = N;
  g.Nz = Nz;
  g.validate();
  return g;
}
}  // namespace

TEST_CASE("GridSpec invariants") {
  GridSpec g = grid1();
  CHECK_NOTHROW(g.validate());
  GridSpec bad = g;
  bad.N = 48;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.Nz = 16;  // even
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = g;
  bad.dealias_fraction = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  // z = -1, -1/2, 0 are grid points
  const ChebGrid& zg = cheb_grid(g.Nz);
  CHECK(zg.z[0] == doctest::Approx(-1.0));
  CHECK(zg.z[(g.Nz - 1) / 2] == doctest::Approx(-0.5));
  CHECK(zg.z[g.Nz - 1] == doctest::Approx(0.0));
}

TEST_CASE("Chebyshev differentiation and quadrature") {
  const ChebGrid& zg = cheb_grid(33);
  RealArray f(33), df(33);
  for (int j = 0; j < 33; ++j) {
    f[j] = std::sin(3.0 * zg.z[j]);
    df[j] = 3.0 * std::cos(3.0 * zg.z[j]);
  }
  RealArray got = zg.D * f.matrix();
  CHECK((got - df).abs().maxCoeff() < 1e-10);
  // integral of sin(3z) over [-1,0] = (cos 3 - 1)/3
  Real integ = (zg.w * f).sum();
  CHECK(integ == doctest::Approx((std::cos(3.0) - 1.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("fft: cos(x) has a single pair of modes with weight 1/2") {
  GridSpec g = grid1(64);
  SurfaceField u = cosine(g, 1);
  const ComplexArray& c = u.coeffs();
  CHECK(std::abs(c[1] - Complex(0.5, 0)) < 1e-14);
  CHECK(std::abs(c[g.N - 1] - Complex(0.5, 0)) < 1e-14);
  for (Index m = 0; m < c.size(); ++m) {
    if (m == 1 || m == g.N - 1) continue;
    CHECK(std::abs(c[m]) < 1e-14);
  }
}

TEST_CASE("fft: constant field concentrates on mode 0") {
  GridSpec g = grid1();
  SurfaceField u = SurfaceField::from_values(g, RealArray::Constant(g.num_points(), 3.0));
  const ComplexArray& c = u.coeffs();
  CHECK(std::abs(c[0] - Complex(3.0, 0)) < 1e-14);
  for (Index m = 1; m < c.size(); ++m) CHECK(std::abs(c[m]) < 1e-13);
}

TEST_CASE("fft: round trip is exact to accumulation tolerance") {
  for (int d = 1; d <= 2; ++d) {
    GridSpec g;
    g.d = d;
    g.N = d == 1 ? 128 : 32;
    g.Nz = 9;
    SurfaceField u = random_surface(g, g.N / 4, 7 + d);
    SurfaceField v = SurfaceField::from_coeffs(g, ComplexArray(u.coeffs()));
    Real rel = (v.values() - u.values()).abs().maxCoeff() / u.values().abs().maxCoeff();
    CHECK(rel < 1e-13);
  }
}

TEST_CASE("dyadic block captures a mid-shell mode exactly") {
  GridSpec g = grid1(128);
  // |xi| = 2^k mid-shell: phi_k(2^k) = zeta(1) - zeta(2) = 1 for k >= 1.
  for (int k = 2; k <= 4; ++k) {
    SurfaceField u = cosine(g, 1 << k);
    SurfaceField blk = dyadic_block(u, k);
    CHECK((blk.values() - u.values()).abs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("partition of unity: sum of blocks reconstructs the field") {
  for (int d = 1; d <= 2; ++d) {
    GridSpec g;
    g.d = d;
    g.N = d == 1 ? 128 : 32;
    g.Nz = 9;
    SurfaceField u = random_surface(g, g.N / 2 - 1, 21 * d);
    DyadicDecomposition dec = decompose(u);
    RealArray sum = RealArray::Zero(g.num_points());
    for (auto& [k, blk] : dec.blocks) sum += blk.values();
    Real rel = (sum - u.values()).abs().maxCoeff() / u.values().abs().maxCoeff();
    CHECK(rel < 1e-13);
  }
}

TEST_CASE("block spectral support stays inside the dyadic annulus") {
  GridSpec g = grid1(128);
  SurfaceField u = random_surface(g, 63, 3);
  const LPTables& t = lp_tables(g);
  for (int k = 0; k <= t.k_max; ++k) {
    ComplexArray c = dyadic_block(u, k).coeffs();
    for (Index m = 0; m < c.size(); ++m) {
      Real r = g.xi_abs(m);
      bool inside = (k == 0) ? (r < 1.9) : (r > 1.1 * std::ldexp(1.0, k - 1) &&
                                            r < 1.9 * std::ldexp(1.0, k));
      if (!inside) CHECK(std::abs(c[m]) == 0.0);
    }
  }
  // out-of-range k gives the zero field
  CHECK(dyadic_block(u, -1).values().abs().maxCoeff() == 0.0);
  CHECK(low_pass(u, -2).values().abs().maxCoeff() == 0.0);
}

TEST_CASE("Bernstein: derivative of a block costs at most 1.9 * 2^k") {
  GridSpec g = grid1(128);
  SurfaceField u = random_surface(g, 60, 11);
  for (int k = 1; k <= 5; ++k) {
    SurfaceField blk = dyadic_block(u, k);
    Real nb = l2_norm(blk);
    if (nb < 1e-14) continue;
    Real nd = l2_norm(deriv(blk, 0));
    CHECK(nd <= 1.9 * std::ldexp(1.0, k) * nb * (1 + 1e-12));
  }
}

TEST_CASE("S_k idempotence: S_k S_j = S_min(k,j)") {
  GridSpec g = grid1(128);
  SurfaceField u = random_surface(g, 60, 13);
  for (int k : {1, 3, 5}) {
    for (int j : {2, 4}) {
      SurfaceField lhs = low_pass(low_pass(u, j), k);
      SurfaceField rhs = low_pass(u, std::min(k, j));
      CHECK((lhs.values() - rhs.values()).abs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("norms: zero field gives zero") {
  GridSpec g = grid1();
  SurfaceField z(g);
  CHECK(sobolev_norm(z, 1.5) == 0.0);
  CHECK(besov_norm(z, 1.0, 2, 2) == 0.0);
  CHECK(zygmund_norm(z, 0.5) == 0.0);
  StripField zs(g);
  CHECK(chemin_lerner_norm(zs, 2, 1, 2, 2) == 0.0);
}

TEST_CASE("Parseval: sobolev_norm(cos 4x, 0) = sqrt(pi) on L = 2pi") {
  GridSpec g = grid1(64);
  SurfaceField u = cosine(g, 4);
  CHECK(sobolev_norm(u, 0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("Besov(2,2) is equivalent to Sobolev within C = 4") {
  GridSpec g = grid1(128);
  for (int trial = 0; trial < 100; ++trial) {
    SurfaceField u = random_surface(g, 40, 100 + trial);
    for (Real s : {0.0, 1.0, 2.0}) {
      Real ratio = besov_norm(u, s, 2, 2) / sobolev_norm(u, s);
      CHECK(ratio > 0.25);
      CHECK(ratio < 4.0);
    }
  }
}

TEST_CASE("norm monotonicity in s on mode-0-free fields") {
  GridSpec g = grid1(64);
  SurfaceField u = random_surface(g, 20, 5);  // zero-mean by construction
  CHECK(sobolev_norm(u, 0.5) <= sobolev_norm(u, 1.0));
  CHECK(sobolev_norm(u, 1.0) <= sobolev_norm(u, 2.5));
}

TEST_CASE("Chemin-Lerner: separable field factorizes") {
  GridSpec g = grid1(64, 17);
  const ChebGrid& zg = cheb_grid(g.Nz);
  auto gz = [](Real z) { return std::exp(z) * (1.0 + 0.5 * z); };
  StripField w = strip_from_function(g, [&](Real x, Real z) { return gz(z) * std::cos(x); });
  // |xi| = 1 lies in block 0 only; the norm must equal ||g||_{L^q_z} * ||cos||_{L^p}.
  for (Real q : {2.0, kInf}) {
    for (Real p : {2.0, kInf}) {
      Real got = chemin_lerner_norm(w, q, 0.7, p, 2.0);
      RealArray gv(g.Nz);
      for (int j = 0; j < g.Nz; ++j) gv[j] = std::abs(gz(zg.z[j]));
      Real zfac = std::isinf(q) ? gv.maxCoeff()
                                : std::sqrt((zg.w_trap * gv.square()).sum());
      SurfaceField cx = cosine(g, 1);
      Real xfac = std::isinf(p) ? linf_norm(cx) : l2_norm(cx);
      CHECK(got == doctest::Approx(zfac * xfac).epsilon(1e-10));
    }
  }
}

TEST_CASE("Chemin-Lerner: Hoelder in z (L2 bounded by |I|^(1/2) Linf)") {
  GridSpec g = grid1(32, 17);
  for (int trial = 0; trial < 5; ++trial) {
    RealMatrix vals(g.Nz, g.num_points());
    std::mt19937 rng(300 + trial);
    std::normal_distribution<Real> gauss;
    const ChebGrid& zg = cheb_grid(g.Nz);
    SurfaceField base = random_surface(g, 10, 400 + trial);
    for (int j = 0; j < g.Nz; ++j)
      vals.row(j) = (std::cos(3 * zg.z[j] + gauss(rng)) * base.values()).matrix().transpose();
    StripField w = StripField::from_values(g, std::move(vals));
    Real n2 = chemin_lerner_norm(w, 2, 1.0, 2, 2);
    Real ninf = chemin_lerner_norm(w, kInf, 1.0, 2, 2);
    CHECK(n2 <= ninf * 1.0 + 1e-12);  // |I| = 1
  }
}

TEST_CASE("dealias keeps the retained band and kills the rest") {
  GridSpec g = grid1(64);
  SurfaceField u = random_surface(g, 31, 17, 1.0, false);
  SurfaceField v = dealias(u);
  const ComplexArray& c = v.coeffs();
  int cut = g.dealias_cut();
  CHECK(cut == 21);
  for (Index m = 0; m < c.size(); ++m) {
    int f = g.signed_freq(int(m));
    if (std::abs(f) > cut) CHECK(std::abs(c[m]) == 0.0);
  }
  // retained modes untouched
  for (Index m = 0; m < c.size(); ++m) {
    int f = g.signed_freq(int(m));
    if (std::abs(f) <= cut) CHECK(std::abs(c[m] - u.coeffs()[m]) < 1e-15);
  }
}

TEST_CASE("non-default period: wavenumbers scale with 2pi/L") {
  GridSpec g = grid1(64);
  g.L = 4.0 * kPi;  // fundamental wavenumber 1/2
  SurfaceField u = cosine(g, 1);  // cos(x/2)
  SurfaceField du = deriv(u, 0);
  for (Index p = 0; p < g.num_points(); ++p) {
    Real x = g.x(p, 0);
    CHECK(std::abs(du.values()[p] + 0.5 * std::sin(0.5 * x)) < 1e-13);
  }
  // Parseval with the longer period: ||cos(x/2)||_L2 = sqrt(L/2)
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(g.L / 2)).epsilon(1e-12));
  CHECK(sobolev_norm(u, 0) == doctest::Approx(std::sqrt(g.L / 2)).epsilon(1e-12));
}

TEST_CASE("Chemin-Lerner at q=p=r=2 is equivalent to the L2_z H^s norm") {
  GridSpec g = grid1(64, 17);
  const ChebGrid& zg = cheb_grid(g.Nz);
  std::mt19937 rng(55);
  std::normal_distribution<Real> gauss;
  RealMatrix vals(g.Nz, g.num_points());
  SurfaceField base = random_surface(g, 20, 66);
  for (int j = 0; j < g.Nz; ++j)
    vals.row(j) = (std::exp(zg.z[j]) * (1.0 + 0.3 * gauss(rng)) * base.values())
                      .matrix()
                      .transpose();
  StripField w = StripField::from_values(g, vals);
  for (Real s : {0.0, 1.0}) {
    Real cl = chemin_lerner_norm(w, 2, s, 2, 2);
    RealArray per(g.Nz);
    for (int j = 0; j < g.Nz; ++j) per[j] = sobolev_norm(w.level(j), s);
    Real l2hs = std::sqrt((zg.w_trap * per.square()).sum());
    Real ratio = cl / l2hs;
    CHECK(ratio > 0.25);
    CHECK(ratio < 4.0);
  }
}
