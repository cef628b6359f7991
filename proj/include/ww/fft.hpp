#pragma once

#include "ww/core.hpp"

namespace ww {

// Discrete transforms with the analyst's normalization: coefficients are
// u_hat(xi) = N^-d * sum_x u(x) e^{-i xi.x}, so u(x) = sum_xi u_hat(xi) e^{i xi.x}
// and cos(kx) carries weight 1/2 at modes +-k.
void dft_forward(const GridSpec& g, const RealArray& values, ComplexArray& coeffs);
void dft_inverse(const GridSpec& g, const ComplexArray& coeffs, RealArray& values);

// Complex-valued variants (used for symbol tables).
void dft_forward_c(const GridSpec& g, const ComplexArray& values, ComplexArray& coeffs);
void dft_inverse_c(const GridSpec& g, const ComplexArray& coeffs, ComplexArray& values);

}  // namespace ww
