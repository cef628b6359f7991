#pragma once

#include "ww/state.hpp"

namespace ww {

// Build (or fetch) the per-state cache: map with surface motion, coefficients,
// recovered velocity and pressure. Throws DepthViolation when 1+eta dips
// below h0/2.
const StateCache& ensure_cache(const WaveState& s, const DynamicsParams& p);

// Full velocity from the vorticity and the boundary traces,
// Lap v = -curl omega, v = (V,B) on top and (V_b, 0) at the bottom.
// div and curl defects are recorded into the cache, not enforced.
StripVector recover_velocity(const WaveState& s, const DynamicsParams& p);

// Irrotational/rotational split: v_ir carries the surface traces with zero
// bottom data; v_om carries the vorticity and the bottom trace.
struct VelocitySplit {
  StripVector v_ir;
  StripVector v_om;
};
VelocitySplit rotational_split(const WaveState& s, const DynamicsParams& p);

// R_omega: the vorticity-induced remainder in the zeta evolution equation.
SurfaceVector compute_r_omega(const WaveState& s, const StripVector& v_om,
                              const DynamicsParams& p);

StateDerivative assemble_rhs(const WaveState& s, const DynamicsParams& p);

WaveState rk4_step(const WaveState& s, Real dt, const DynamicsParams& p);

// CFL time step from the gravity-wave speed sqrt(max a * k_max).
Real cfl_timestep(const WaveState& s, const DynamicsParams& p);

}  // namespace ww
