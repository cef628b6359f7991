#pragma once

#include "ww/dirichlet_neumann.hpp"
#include "ww/elliptic.hpp"
#include "ww/flattening.hpp"

namespace ww {

// Pressure of the flow: -Lap P = d_i v^j d_j v^i with P = 0 on the surface and
// dP/dy = -1 at the bottom (unit gravity). Solved through the hydrostatic
// shift P1 = P + y, which carries Dirichlet data eta on the surface and a
// homogeneous Neumann bottom.
struct PressureResult {
  StripField P1;              // P + y on the strip
  StripField P;               // full pressure, P1 - rho
  SurfaceField taylor_a;      // a = -dP/dy at the surface
  SurfaceVector bottom_grad;  // grad_x P at y = -1 (d components)
  Real solver_residual = 0;
};

PressureResult solve_pressure(const FlatteningMap& map,
                              const EllipticCoefficients& co,
                              const StripVector& velocity,
                              const DNOptions& opts = {});

struct TaylorCheck {
  Real min_a = 0;
  bool violated = false;
};

// Minimum of a over the grid; flags min < c0.
TaylorCheck taylor_sign_check(const PressureResult& pr, Real c0);

}  // namespace ww
