#include "ww/norms.hpp"

#include "ww/littlewood_paley.hpp"
#include "ww/spectral_ops.hpp"

#include <cmath>
#include <limits>

namespace ww {

Real sobolev_norm(const SurfaceField& u, Real s) {
  const GridSpec& g = u.grid();
  if (!u.finite()) throw std::invalid_argument("sobolev_norm: non-finite field");
  const ComplexArray& c = u.coeffs();
  Real acc = 0;
  for (Index m = 0; m < c.size(); ++m)
    acc += std::pow(1.0 + g.xi_abs2(m), s) * std::norm(c[m]);
  return std::sqrt(std::pow(g.L, g.d) * acc);
}

Real besov_norm(const SurfaceField& u, Real s, Real p, Real q) {
  if (!u.finite()) throw std::invalid_argument("besov_norm: non-finite field");
  const LPTables& t = lp_tables(u.grid());
  Real acc = 0, best = 0;
  for (int k = 0; k <= t.k_max; ++k) {
    Real nk = std::pow(2.0, s * k) * lp_norm(dyadic_block(u, k), p);
    if (std::isinf(q))
      best = std::max(best, nk);
    else
      acc += std::pow(nk, q);
  }
  return std::isinf(q) ? best : std::pow(acc, 1.0 / q);
}

Real zygmund_norm(const SurfaceField& u, Real s) {
  const Real inf = std::numeric_limits<Real>::infinity();
  return besov_norm(u, s, inf, inf);
}

Real chemin_lerner_norm(const StripField& w, Real q, Real s, Real p, Real r) {
  if (!w.finite()) throw std::invalid_argument("chemin_lerner_norm: non-finite field");
  const GridSpec& g = w.grid();
  const LPTables& t = lp_tables(g);
  const RealArray& wt = w.zgrid().w_trap;
  Real acc = 0, best = 0;
  for (int k = 0; k <= t.k_max; ++k) {
    RealArray per_level(g.Nz);
    for (int j = 0; j < g.Nz; ++j)
      per_level[j] = lp_norm(dyadic_block(w.level(j), k), p);
    Real zq = std::isinf(q) ? per_level.maxCoeff()
                            : std::pow((wt * per_level.pow(q)).sum(), 1.0 / q);
    Real nk = std::pow(2.0, s * k) * zq;
    if (std::isinf(r))
      best = std::max(best, nk);
    else
      acc += std::pow(nk, r);
  }
  return std::isinf(r) ? best : std::pow(acc, 1.0 / r);
}

Real strip_sobolev_norm(const StripField& w, Real sigma) {
  const int kmax = int(std::floor(sigma));
  const Real mu = sigma - kmax;
  const GridSpec& g = w.grid();
  const RealArray& wz = w.zgrid().w;

  auto weighted_l2_sq = [&](const StripField& f) {
    const ComplexMatrix& c = f.coeffs();
    Real acc = 0;
    for (Index m = 0; m < c.cols(); ++m) {
      Real wgt = std::pow(1.0 + g.xi_abs2(m), mu);
      for (int j = 0; j < g.Nz; ++j) acc += wgt * wz[j] * std::norm(c(j, m));
    }
    return std::pow(g.L, g.d) * acc;
  };

  // Mixed derivatives d^a_x d^b_z with a+b <= kmax; multinomial weights are
  // dropped (equivalent norm).
  Real total = 0;
  std::vector<StripField> zders{w};
  for (int b = 1; b <= kmax; ++b) zders.push_back(dz(zders.back()));
  for (int b = 0; b <= kmax; ++b) {
    std::vector<StripField> layer{zders[size_t(b)]};
    total += weighted_l2_sq(layer.front());
    for (int a = 1; a + b <= kmax; ++a) {
      std::vector<StripField> next;
      for (const StripField& f : layer)
        for (int ax = 0; ax < g.d; ++ax) next.push_back(deriv_x(f, ax));
      layer = std::move(next);
      for (const StripField& f : layer) total += weighted_l2_sq(f);
    }
  }
  return std::sqrt(total);
}

}  // namespace ww
