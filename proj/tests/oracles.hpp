#pragma once

// Shared test oracles and generators, independent of the library's
// implementation paths they are used to check.

#include "ww/core.hpp"
#include "ww/strip_field.hpp"
#include "ww/surface_field.hpp"

#include <functional>
#include <random>
#include <tuple>
#include <vector>

namespace wwtest {

using namespace ww;

// Random real band-limited field: modes with all |f_axis| <= band, spectrum
// decaying like 1/(1+|f|^2), unit-ish amplitude, zero mean unless requested.
inline SurfaceField random_surface(const GridSpec& g, int band, unsigned seed,
                                   Real amplitude = 1.0, bool zero_mean = true) {
  std::mt19937 rng(seed);
  std::normal_distribution<Real> gauss(0.0, 1.0);
  RealArray vals = RealArray::Zero(g.num_points());
  // Build in physical space as a trig sum so realness is automatic.
  std::vector<std::tuple<int, int, Real, Real>> comps;
  for (int f0 = 0; f0 <= band; ++f0) {
    int f1max = g.d == 2 ? band : 0;
    for (int f1 = (g.d == 2 ? -band : 0); f1 <= f1max; ++f1) {
      if (f0 == 0 && f1 < 0) continue;
      if (zero_mean && f0 == 0 && f1 == 0) continue;
      Real decay = 1.0 / (1.0 + f0 * f0 + f1 * f1);
      comps.emplace_back(f0, f1, gauss(rng) * decay, gauss(rng) * decay);
    }
  }
  for (Index p = 0; p < g.num_points(); ++p) {
    Real x0 = g.x(p, 0);
    Real x1 = g.d == 2 ? g.x(p, 1) : 0.0;
    Real s = 0;
    for (auto& [f0, f1, ac, as] : comps) {
      Real phase = kTwoPi / g.L * (f0 * x0 + f1 * x1);
      s += ac * std::cos(phase) + as * std::sin(phase);
    }
    vals[p] = amplitude * s;
  }
  return SurfaceField::from_values(g, std::move(vals));
}

// cos(k x0) as a field.
inline SurfaceField cosine(const GridSpec& g, int k, Real amp = 1.0) {
  RealArray vals(g.num_points());
  for (Index p = 0; p < g.num_points(); ++p)
    vals[p] = amp * std::cos(kTwoPi / g.L * k * g.x(p, 0));
  return SurfaceField::from_values(g, std::move(vals));
}

inline SurfaceField sine(const GridSpec& g, int k, Real amp = 1.0) {
  RealArray vals(g.num_points());
  for (Index p = 0; p < g.num_points(); ++p)
    vals[p] = amp * std::sin(kTwoPi / g.L * k * g.x(p, 0));
  return SurfaceField::from_values(g, std::move(vals));
}

// Least-squares slope of log2(y) against log2(x).
inline Real loglog_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
  const size_t n = x.size();
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    Real lx = std::log2(x[i]);
    Real ly = std::log2(std::max(y[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Strip field from a callable f(x, z) (d = 1) or f(x0, x1, z).
inline StripField strip_from_function(const GridSpec& g,
                                      const std::function<Real(Real, Real)>& f) {
  const ChebGrid& zg = cheb_grid(g.Nz);
  RealMatrix vals(g.Nz, g.num_points());
  for (int j = 0; j < g.Nz; ++j)
    for (Index p = 0; p < g.num_points(); ++p)
      vals(j, p) = f(g.x(p, 0), zg.z[j]);
  return StripField::from_values(g, std::move(vals));
}

}  // namespace wwtest
