#pragma once

#include "ww/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ww {

struct DiagnosticsRecord {
  Real t = 0;
  Real E_basic = 0;
  Real E_s = 0;
  Real E_symm = 0;
  Real a_min = 0;
  Real depth_min = 0;
  Real curvature_L2 = 0;
  Real curvature_Lp = 0;
  Real lipschitz_v = 0;
  Real zeta_residual = 0;
  Real div_residual = 0;
  Real curl_residual = 0;
  Real good_unknown_residual = 0;
  bool taylor_violation = false;

  bool finite() const;
};

struct DiagnosticsParams {
  Real sobolev_s = 2.5;   // order for E_s and E_symm
  Real curvature_p = 5.0; // L^p exponent for the curvature monitor
  Real c0 = 0.05;
  Real h0 = 0.1;
};

// E = ||v||^2_{L2(Omega_t)} + ||eta||^2_{L2}; the domain integral uses the
// map Jacobian dz_rho.
Real basic_energy(const WaveState& s, const DynamicsParams& p);

// H = div(grad eta / sqrt(1+|grad eta|^2)).
SurfaceField mean_curvature(const SurfaceField& eta);

// (L2, Lp) norms of the curvature field.
std::pair<Real, Real> curvature_norms(const SurfaceField& H, Real p);

// Divergence-form identity residual: max_l || d_j(a_ij d_i eta_l) - d_l H ||_inf
// with a_ij = (1+|grad eta|^2)^{-3/2} ((1+|grad eta|^2) delta_ij - eta_i eta_j).
Real curvature_identity_residual(const SurfaceField& eta);

// Good unknown U = V + T_zeta B (component-wise paraproduct).
SurfaceVector good_unknown(const WaveState& s);

// ||T_sqrt(a lambda) U||_{H^{s-1/2}} + ||D_t U||_{H^{s-1/2}}. Without a
// previous state the time-derivative part of D_t is omitted. Throws
// TaylorSignViolation when a <= 0 somewhere, EllipticityViolation when
// Re lambda fails its lower bound.
Real symmetrizer_energy(const WaveState& s, const WaveState* prev, Real dt,
                        Real sobolev_s, const DynamicsParams& dyn);

// L2 norm of D_t U + T_a zeta - h1 - [D_t, T_zeta] B across one accepted step,
// all time derivatives by centered differences at the midpoint.
Real good_unknown_residual(const WaveState& current, const WaveState& previous,
                           Real dt, const DynamicsParams& dyn);

DiagnosticsRecord compute_record(const WaveState& s, const WaveState* prev, Real dt,
                                 const DynamicsParams& dyn,
                                 const DiagnosticsParams& dia);

struct BreakdownReport {
  Real curvature_sup = 0;   // sup_t ||H||_{L^p cap L^2}
  Real lipschitz_sup = 0;   // sup_t ||v||_{W^{1,inf}}
  Real M = 0;               // sum of the two
  Real E_s_sup = 0;
  std::optional<Real> taylor_first_violation;  // first t with a_min < c0
  std::optional<Real> depth_first_violation;   // first t with depth_min < h0
  std::string first_violation;                 // "taylor", "depth" or ""
  std::string abort_reason;
};

BreakdownReport breakdown_report(const std::vector<DiagnosticsRecord>& records,
                                 Real c0, Real h0,
                                 const std::string& abort_reason = "");

}  // namespace ww
