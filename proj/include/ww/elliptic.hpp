#pragma once

#include "ww/flattening.hpp"
#include "ww/paradiff.hpp"
#include "ww/strip_field.hpp"

#include <vector>

namespace ww {

enum class BottomKind { Dirichlet, Neumann };

// d^2_z v + alpha Lap v + beta . grad dz v - gamma dz v = F0 on the strip,
// Dirichlet data on top (z = 0), Dirichlet or homogeneous-Neumann bottom.
struct EllipticProblem {
  EllipticCoefficients coeffs;
  StripField F0;
  SurfaceField top;
  SurfaceField bottom;  // ignored for Neumann
  BottomKind bottom_kind = BottomKind::Dirichlet;
  Real tolerance = 1e-10;
  int max_iterations = 300;
};

struct StripSolution {
  StripField v;
  SurfaceField dz_top;  // dz v at z = 0 (Chebyshev top row)
  Real residual = 0;    // final interior residual, relative to the data scale
  int iterations = 0;
};

// The discrete operator L applied to nodal values (interior rows meaningful).
StripField apply_operator(const EllipticCoefficients& co, const StripField& v);

// Exact solver for trivial coefficients (alpha = 1, beta = gamma = 0):
// per-mode analytic homogeneous part plus dense-LU particular part.
StripSolution solve_flat(const EllipticProblem& p);

// Residual-correction iteration preconditioned by the flat solver.
StripSolution solve_direct(const EllipticProblem& p);

// First-order factorization symbols of the strip operator,
//   a = (-i beta.xi - sqrt(4 alpha |xi|^2 - (beta.xi)^2)) / 2,
//   A = (-i beta.xi + sqrt(4 alpha |xi|^2 - (beta.xi)^2)) / 2,
// per z-level, with a A = -alpha |xi|^2 and a + A = -i beta.xi pointwise.
struct FactorizationSymbols {
  std::vector<SymbolField> a_sym;  // per level, Re a <= -c1 |xi|
  std::vector<SymbolField> A_sym;  // per level, Re A >= +c1 |xi|
  Real c1 = 0;
};
FactorizationSymbols factorization_symbols(const EllipticCoefficients& co);

enum class MarchDirection { Forward, Backward };  // forward: z = -1 up to 0

// March dz w + T_a w = f with w given at the starting level (z = -1 for
// forward, z = 0 for backward). The x-mean of the symbol is integrated
// exactly per mode; the x-varying remainder is explicit (Heun). Requires
// Re a >= c1 |xi| (forward) or Re a <= -c1 |xi| (backward) on the grid.
StripField parabolic_march(const std::vector<SymbolField>& a_levels,
                           const SurfaceField& w0, const StripField& f,
                           MarchDirection direction);

// Defect-correction solver whose inner step is the parabolic double march
// (up with T_a, down with T_A) plus a flat boundary fix.
StripSolution solve_factored(const EllipticProblem& p);

}  // namespace ww
