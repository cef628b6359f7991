#pragma once

#include "ww/elliptic.hpp"
#include "ww/flattening.hpp"
#include "ww/paradiff.hpp"

namespace ww {

enum class DNBottom { Dirichlet0, Neumann0 };
enum class SolverBackend { Direct, Factored };

struct DNOptions {
  Real tolerance = 1e-10;
  int max_iterations = 300;
  SolverBackend backend = SolverBackend::Direct;
};

// G(eta) f with its harmonic extension, paralinearization symbol and
// remainder. The decomposition Gf = T_lambda f + remainder holds by
// construction; lambda = zeta1 A - i zeta2 . xi at z = 0.
struct DNResult {
  SurfaceField Gf;
  StripField phi;          // extension on the flattened strip
  SurfaceField dz_phi_top;
  SymbolField lambda;
  SurfaceField remainder;
  DNBottom bottom = DNBottom::Dirichlet0;
  Real solver_residual = 0;
};

DNResult dn_apply(const SurfaceField& eta, const SurfaceField& f, DNBottom bottom,
                  const DNOptions& opts = {});

// Same, reusing an existing map and coefficient set.
DNResult dn_apply(const FlatteningMap& map, const EllipticCoefficients& co,
                  const SurfaceField& f, DNBottom bottom, const DNOptions& opts = {});

// lambda(x,xi) at the surface (order 1).
SymbolField dn_symbol(const FlatteningMap& map, const EllipticCoefficients& co);

SurfaceField dn_remainder(const DNResult& result);

struct SlopeReport {
  std::vector<Real> freqs;
  std::vector<Real> remainder_norms;
  std::vector<Real> dn_norms;
  Real remainder_slope = 0;
  Real dn_slope = 0;
  Real gain() const { return dn_slope - remainder_slope; }
};

// Sweep f_k = cos(k x), k = k_min..k_max, and report log-log slopes of
// ||R(eta) f_k|| and ||G(eta) f_k||.
SlopeReport remainder_order_check(const SurfaceField& eta, DNBottom bottom,
                                  int k_min, int k_max, const DNOptions& opts = {});

// (<G f, g>, <f, G g>)
std::pair<Real, Real> dn_selfadjoint_check(const SurfaceField& eta,
                                           const SurfaceField& f,
                                           const SurfaceField& g, DNBottom bottom,
                                           const DNOptions& opts = {});

// <G f, f>
Real dn_positivity_check(const SurfaceField& eta, const SurfaceField& f,
                         DNBottom bottom, const DNOptions& opts = {});

}  // namespace ww
