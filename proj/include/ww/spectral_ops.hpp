#pragma once

#include "ww/strip_field.hpp"
#include "ww/surface_field.hpp"

#include <functional>

namespace ww {

// Apply a real or complex Fourier multiplier m(xi) to all modes.
SurfaceField apply_multiplier(const SurfaceField& u,
                              const std::function<Complex(const GridSpec&, Index)>& m);

// Spectral partial derivative along `axis` (the Nyquist mode is zeroed).
SurfaceField deriv(const SurfaceField& u, int axis);

SurfaceVector gradient(const SurfaceField& u);

SurfaceField laplacian(const SurfaceField& u);

// <D>^s = (1 + |xi|^2)^{s/2}.
SurfaceField bessel_power(const SurfaceField& u, Real s);

// |D|^s with mode 0 annihilated for s > 0 kept as-is for s = 0.
SurfaceField abs_d_power(const SurfaceField& u, Real s);

// e^{t|D|} (t <= 0 in all uses here).
SurfaceField exp_abs_d(const SurfaceField& u, Real t);

// Zero all modes outside the dealias-retained set (2/3 rule by default).
SurfaceField dealias(const SurfaceField& u);
StripField dealias(const StripField& u);

// Pointwise product followed by dealiasing; the pseudospectral workhorse.
SurfaceField dealiased_product(const SurfaceField& a, const SurfaceField& b);

// Spectral exponential filter exp(-36 (|xi_axis|/xi_max)^36) applied per axis.
SurfaceField exp_filter(const SurfaceField& u);
StripField exp_filter(const StripField& u);

// Horizontal derivative of a strip field (level by level).
StripField deriv_x(const StripField& u, int axis);

// L2 / Linf over the torus with the physical measure (dx = (L/N)^d).
Real l2_norm(const SurfaceField& u);
Real lp_norm(const SurfaceField& u, Real p);  // p = inf -> max
Real linf_norm(const SurfaceField& u);

// <u, v> = integral of u v over the torus.
Real inner(const SurfaceField& u, const SurfaceField& v);

}  // namespace ww
