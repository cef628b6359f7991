#pragma once

#include "ww/dirichlet_neumann.hpp"
#include "ww/flattening.hpp"
#include "ww/pressure.hpp"
#include "ww/strip_field.hpp"
#include "ww/surface_field.hpp"

#include <memory>

namespace ww {

struct TaylorSignViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything derived from the evolved fields at a fixed time: geometry,
// recovered velocity, pressure. Built on demand and dropped on state change.
struct StateCache {
  FlatteningMap map;
  EllipticCoefficients coeffs;
  SurfaceField dt_eta;
  StripVector velocity;  // d+1 components on the strip
  Real div_residual = 0;
  Real curl_residual = 0;
  PressureResult pressure;
};

// The evolved tuple (eta, V, B, V_b, omega~). Vorticity is scalar for d = 1
// and the 3-vector (w_{23}, w_{31}, w_{12}) for d = 2, transported in
// flattened coordinates.
struct WaveState {
  Real t = 0;
  GridSpec grid;
  SurfaceField eta;
  SurfaceVector V;    // d components
  SurfaceField B;
  SurfaceVector Vb;   // d components
  StripVector omega;  // 1 or 3 components

  mutable std::shared_ptr<const StateCache> cache;

  static WaveState rest(const GridSpec& g) {
    WaveState s;
    s.grid = g;
    s.eta = SurfaceField(g);
    s.V.assign(size_t(g.d), SurfaceField(g));
    s.B = SurfaceField(g);
    s.Vb.assign(size_t(g.d), SurfaceField(g));
    s.omega.assign(g.d == 1 ? 1 : 3, StripField(g));
    return s;
  }

  bool finite() const {
    bool ok = eta.finite() && B.finite();
    for (const auto& f : V) ok = ok && f.finite();
    for (const auto& f : Vb) ok = ok && f.finite();
    for (const auto& f : omega) ok = ok && f.finite();
    return ok;
  }
};

struct StateDerivative {
  SurfaceField d_eta;
  SurfaceVector d_V;
  SurfaceField d_B;
  SurfaceVector d_Vb;
  StripVector d_omega;
  Real a_min = 0;
  bool taylor_violation = false;
};

struct DynamicsParams {
  Real h0 = 0.1;
  Real c0 = 0.05;
  Real tolerance = 1e-10;
  int max_iterations = 300;
  SolverBackend backend = SolverBackend::Direct;
  bool cross_check = false;  // run both elliptic backends and compare
  bool filter = true;
  Real cfl_safety = 0.5;
};

}  // namespace ww
