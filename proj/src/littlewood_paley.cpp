#include "ww/littlewood_paley.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace ww {

namespace {

// C^4 polynomial smoothstep on [0,1].
Real smoothstep4(Real t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  Real t5 = std::pow(t, 5);
  return t5 * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))));
}

}  // namespace

Real zeta_cut(Real t) {
  Real r = std::abs(t);
  return 1.0 - smoothstep4((r - 1.1) / 0.8);
}

Real zeta_cut_k(int k, Real t) { return zeta_cut(std::ldexp(t, -k)); }

Real phi_cut(int k, Real t) {
  if (k < 0) return 0;
  if (k == 0) return zeta_cut(t);
  return zeta_cut_k(k, t) - zeta_cut_k(k - 1, t);
}

Real psi_cut(Real t) { return smoothstep4(std::abs(t) - 1.0); }

int max_block(const GridSpec& g) {
  // |xi| on the grid is at most sqrt(d) * (2pi/L) * N/2; zeta_k == 1 there once
  // 1.1 * 2^k exceeds it.
  Real xi_max = kTwoPi / g.L * (g.N / 2) * std::sqrt(Real(g.d));
  int k = 0;
  while (1.1 * std::ldexp(1.0, k) < xi_max) ++k;
  return k;
}

namespace {

std::map<std::tuple<int, int, Real>, LPTables> lp_registry;
std::mutex lp_mutex;

LPTables build_tables(const GridSpec& g) {
  LPTables t;
  t.k_max = max_block(g);
  const Index n = g.num_modes();
  t.psi.resize(n);
  t.phi.assign(t.k_max + 1, RealArray::Zero(n));
  for (Index m = 0; m < n; ++m) {
    Real r = g.xi_abs(m);
    t.psi[m] = psi_cut(r);
    for (int k = 0; k <= t.k_max; ++k) t.phi[k][m] = phi_cut(k, r);
  }
  return t;
}

}  // namespace

const LPTables& lp_tables(const GridSpec& g) {
  std::lock_guard<std::mutex> lock(lp_mutex);
  auto key = std::make_tuple(g.d, g.N, g.L);
  auto it = lp_registry.find(key);
  if (it == lp_registry.end()) it = lp_registry.emplace(key, build_tables(g)).first;
  return it->second;
}

SurfaceField dyadic_block(const SurfaceField& u, int k) {
  const GridSpec& g = u.grid();
  const LPTables& t = lp_tables(g);
  if (k < 0 || k > t.k_max) return SurfaceField(g);
  ComplexArray c = u.coeffs();
  c *= t.phi[size_t(k)].cast<Complex>();
  return SurfaceField::from_coeffs(g, std::move(c));
}

SurfaceField low_pass(const SurfaceField& u, int k) {
  const GridSpec& g = u.grid();
  if (k < 0) return SurfaceField(g);
  const LPTables& t = lp_tables(g);
  ComplexArray c = u.coeffs();
  if (k >= t.k_max) return SurfaceField::from_coeffs(g, std::move(c));
  for (Index m = 0; m < c.size(); ++m) c[m] *= zeta_cut_k(k, g.xi_abs(m));
  return SurfaceField::from_coeffs(g, std::move(c));
}

DyadicDecomposition decompose(const SurfaceField& u) {
  DyadicDecomposition d;
  d.k_max = lp_tables(u.grid()).k_max;
  d.blocks.reserve(d.k_max + 1);
  for (int k = 0; k <= d.k_max; ++k) d.blocks.emplace_back(k, dyadic_block(u, k));
  return d;
}

}  // namespace ww
