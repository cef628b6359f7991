#pragma once

#include "ww/strip_field.hpp"
#include "ww/surface_field.hpp"

#include <optional>
#include <vector>

namespace ww {

// Regularized boundary-flattening diffeomorphism
//   rho_delta(x,z) = z + (1+z) e^{delta z |D|} eta(x),
// mapping the flat strip onto {-1 < y < eta(x)}. All z-derivatives of rho are
// analytic in the multiplier representation and tabulated per level.
struct FlatteningMap {
  GridSpec grid;
  SurfaceField eta;
  Real delta = 0.5;
  Real h0 = 1.0;

  RealMatrix rho;                  // (Nz x Npts)
  RealMatrix dz_rho;
  RealMatrix d2z_rho;
  std::vector<RealMatrix> grad_rho;     // d components
  std::vector<RealMatrix> grad_dz_rho;  // d components
  RealMatrix lap_rho;
  std::optional<RealMatrix> dt_rho;     // set once the surface velocity is known

  Real min_dz_rho() const { return dz_rho.minCoeff(); }
};

struct EllipticCoefficients {
  GridSpec grid;
  RealMatrix alpha;
  std::vector<RealMatrix> beta;  // d components
  RealMatrix gamma;
  // grid minimum of (4 alpha |xi|^2 - (beta.xi)^2)/|xi|^2 over retained modes
  Real ellipticity_c2 = 0;
};

// Build the map; requires min(1+eta) >= h0 (else DepthViolation). When delta
// is omitted it is halved from 1/2 until dz_rho >= h0/2 on the grid (at most
// 20 halvings, else FlatteningFailure).
FlatteningMap build_map(const SurfaceField& eta, Real h0,
                        std::optional<Real> delta = std::nullopt);

// Install dt_rho = (1+z) e^{delta z |D|} (dt_eta).
void set_surface_motion(FlatteningMap& map, const SurfaceField& dt_eta);

EllipticCoefficients coefficients(const FlatteningMap& map);

// Physical-domain samples on per-column uniform y-grids: column p spans
// [-1, eta(x_p)] with Nz equally spaced points (row j = y level j).
struct PhysicalColumns {
  GridSpec grid;
  RealMatrix values;   // (Nz x Npts)
  RealArray eta_vals;  // top of each column
};

// f~(x,z) = f(x, rho(x,z)) by monotone cubic column interpolation.
StripField pullback(const PhysicalColumns& f, const FlatteningMap& map);

// Inverse transport back to the uniform-in-y columns.
PhysicalColumns pushforward(const StripField& f, const FlatteningMap& map);

// v_bar = (v^h, (v^{d+1} - dt_rho - v^h . grad rho) / dz_rho): the advecting
// field for the vorticity on the flattened strip. Requires dt_rho.
StripVector transport_velocity(const StripVector& v_tilde, const FlatteningMap& map);

// Chain-rule physical derivatives of a strip field g~(x,z) = g(x, rho(x,z)):
//   (d_y g) o Phi = dz g~ / dz rho
//   (d_{x_i} g) o Phi = d_{x_i} g~ - (dz g~ / dz rho) d_{x_i} rho
StripField physical_dy(const StripField& f, const FlatteningMap& map);
StripField physical_dx(const StripField& f, const FlatteningMap& map, int axis);

}  // namespace ww
