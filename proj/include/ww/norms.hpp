#pragma once

#include "ww/strip_field.hpp"
#include "ww/surface_field.hpp"

namespace ww {

// H^s via (L^d sum <xi>^{2s} |u_hat|^2)^{1/2}; agrees with the physical L2
// quadrature at s = 0.
Real sobolev_norm(const SurfaceField& u, Real s);

// Inhomogeneous Besov norm (sum_k 2^{ksq} ||Delta_k u||_{L^p}^q)^{1/q};
// p or q may be infinity.
Real besov_norm(const SurfaceField& u, Real s, Real p, Real q);

// Zygmund space C^s = B^s_{inf,inf}.
Real zygmund_norm(const SurfaceField& u, Real s);

// Chemin-Lerner norm (sum_k 2^{ksr} ||Delta_k w||_{L^q_z(I;L^p_x)}^r)^{1/r}
// with the z-integral by (nonuniform) composite trapezoid; q, p, r may be
// infinity. For q = p = r = 2 this is the L^2_z H^s norm up to quadrature.
Real chemin_lerner_norm(const StripField& w, Real q, Real s, Real p, Real r);

// Equivalent H^sigma norm on the flat strip: mixed x/z derivatives up to
// floor(sigma), fractional part by x-spectral weighting.
Real strip_sobolev_norm(const StripField& w, Real sigma);

}  // namespace ww
