#pragma once

#include "ww/surface_field.hpp"

#include <utility>
#include <vector>

namespace ww {

// Littlewood-Paley dyadic decomposition with the cutoffs
//   zeta(t) = 1 for |t| <= 1.1, = 0 for |t| >= 1.9 (C^4 polynomial smoothstep),
//   zeta_k(t) = zeta(2^-k t),  phi_0 = zeta,  phi_k = zeta_k - zeta_{k-1} (k>=1),
//   psi(t) = 0 for |t| <= 1, = 1 for |t| >= 2.
// Block 0 is the low-frequency ball |xi| <= 1.9; Delta_k = 0 for k < 0 and
// S_k = 0 for k < 0 (the low block carries index 0, not -1).

Real zeta_cut(Real t);             // the base bump
Real zeta_cut_k(int k, Real t);    // zeta(2^-k t), defined for all integer k
Real phi_cut(int k, Real t);       // dyadic shell cutoffs, k >= 0
Real psi_cut(Real t);              // paradifferential low-frequency cutoff

// Largest k with a nonempty shell on the grid; chosen so that
// sum_{k<=k_max} phi_k = 1 on every grid mode (Nyquist included).
int max_block(const GridSpec& g);

// Per-grid tables of phi_k(|xi_m|) and psi(|xi_m|).
struct LPTables {
  int k_max = 0;
  std::vector<RealArray> phi;  // phi[k][mode], k = 0..k_max
  RealArray psi;               // psi(|xi_m|)
};
const LPTables& lp_tables(const GridSpec& g);

// Delta_k u (zero field for k < 0 or k > k_max).
SurfaceField dyadic_block(const SurfaceField& u, int k);

// S_k u = sum_{l<=k} Delta_l u (zero field for k < 0).
SurfaceField low_pass(const SurfaceField& u, int k);

struct DyadicDecomposition {
  int k_max = 0;
  std::vector<std::pair<int, SurfaceField>> blocks;  // (k, Delta_k u), k = 0..k_max
};
DyadicDecomposition decompose(const SurfaceField& u);

}  // namespace ww
