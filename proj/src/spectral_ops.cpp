#include "ww/spectral_ops.hpp"

namespace ww {

SurfaceField apply_multiplier(const SurfaceField& u,
                              const std::function<Complex(const GridSpec&, Index)>& m) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index k = 0; k < c.size(); ++k) c[k] *= m(g, k);
  return SurfaceField::from_coeffs(g, std::move(c));
}

namespace {

bool has_nyquist(const GridSpec& g, Index m) {
  for (int a = 0; a < g.d; ++a)
    if (g.axis_index(m, a) == g.N / 2) return true;
  return false;
}

}  // namespace

SurfaceField deriv(const SurfaceField& u, int axis) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m) {
    if (has_nyquist(g, m)) {
      c[m] = 0;
      continue;
    }
    c[m] *= Complex(0, g.xi(m, axis));
  }
  return SurfaceField::from_coeffs(g, std::move(c));
}

SurfaceVector gradient(const SurfaceField& u) {
  SurfaceVector out;
  for (int a = 0; a < u.grid().d; ++a) out.push_back(deriv(u, a));
  return out;
}

SurfaceField laplacian(const SurfaceField& u) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m) c[m] *= -g.xi_abs2(m);
  return SurfaceField::from_coeffs(g, std::move(c));
}

SurfaceField bessel_power(const SurfaceField& u, Real s) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m)
    c[m] *= std::pow(1.0 + g.xi_abs2(m), 0.5 * s);
  return SurfaceField::from_coeffs(g, std::move(c));
}

SurfaceField abs_d_power(const SurfaceField& u, Real s) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m) {
    Real r = g.xi_abs(m);
    c[m] *= (r == 0 && s != 0) ? 0.0 : std::pow(r, s);
  }
  return SurfaceField::from_coeffs(g, std::move(c));
}

SurfaceField exp_abs_d(const SurfaceField& u, Real t) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m) c[m] *= std::exp(t * g.xi_abs(m));
  return SurfaceField::from_coeffs(g, std::move(c));
}

SurfaceField dealias(const SurfaceField& u) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m)
    if (!g.retained(m)) c[m] = 0;
  return SurfaceField::from_coeffs(g, std::move(c));
}

StripField dealias(const StripField& u) {
  const GridSpec& g = u.grid();
  ComplexMatrix c = u.coeffs();
  for (Index m = 0; m < c.cols(); ++m)
    if (!g.retained(m)) c.col(m).setZero();
  return StripField::from_coeffs(g, std::move(c));
}

SurfaceField dealiased_product(const SurfaceField& a, const SurfaceField& b) {
  return dealias(a * b);
}

namespace {

Real filter_factor(const GridSpec& g, Index m) {
  Real xi_max = kTwoPi / g.L * (g.N / 2);
  Real f = 1.0;
  for (int a = 0; a < g.d; ++a) {
    Real r = std::abs(g.xi(m, a)) / xi_max;
    f *= std::exp(-36.0 * std::pow(r, 36));
  }
  return f;
}

}  // namespace

SurfaceField exp_filter(const SurfaceField& u) {
  const GridSpec& g = u.grid();
  ComplexArray c = u.coeffs();
  for (Index m = 0; m < c.size(); ++m) c[m] *= filter_factor(g, m);
  return SurfaceField::from_coeffs(g, std::move(c));
}

StripField exp_filter(const StripField& u) {
  const GridSpec& g = u.grid();
  ComplexMatrix c = u.coeffs();
  for (Index m = 0; m < c.cols(); ++m) c.col(m) *= filter_factor(g, m);
  return StripField::from_coeffs(g, std::move(c));
}

StripField deriv_x(const StripField& u, int axis) {
  const GridSpec& g = u.grid();
  ComplexMatrix c = u.coeffs();
  for (Index m = 0; m < c.cols(); ++m) {
    bool nyq = false;
    for (int a = 0; a < g.d; ++a)
      if (g.axis_index(m, a) == g.N / 2) nyq = true;
    c.col(m) *= nyq ? Complex(0, 0) : Complex(0, g.xi(m, axis));
  }
  return StripField::from_coeffs(g, std::move(c));
}

Real l2_norm(const SurfaceField& u) {
  Real hx = std::pow(u.grid().dx(), u.grid().d);
  return std::sqrt(hx * u.values().square().sum());
}

Real lp_norm(const SurfaceField& u, Real p) {
  if (std::isinf(p)) return linf_norm(u);
  Real hx = std::pow(u.grid().dx(), u.grid().d);
  return std::pow(hx * u.values().abs().pow(p).sum(), 1.0 / p);
}

Real linf_norm(const SurfaceField& u) {
  return u.values().abs().maxCoeff();
}

Real inner(const SurfaceField& u, const SurfaceField& v) {
  require_same_grid(u.grid(), v.grid(), "inner");
  Real hx = std::pow(u.grid().dx(), u.grid().d);
  return hx * (u.values() * v.values()).sum();
}

}  // namespace ww
