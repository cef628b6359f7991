#pragma once

#include "ww/core.hpp"

namespace ww {

// Chebyshev-Gauss-Lobatto machinery on the vertical interval [-1,0].
// Nodes are stored ascending: z[0] = -1, z[Nz-1] = 0; for odd Nz the midpoint
// z = -1/2 is a node. D maps nodal values to d/dz values, w are the
// Clenshaw-Curtis quadrature weights for the integral over [-1,0], and
// w_trap the (nonuniform) composite-trapezoid weights used by the
// Chemin-Lerner norms.
struct ChebGrid {
  int Nz = 0;
  RealArray z;
  RealMatrix D;
  RealMatrix D2;
  RealArray w;
  RealArray w_trap;
};

// Registry of Chebyshev grids keyed by Nz (built once, immutable afterwards).
const ChebGrid& cheb_grid(int Nz);

}  // namespace ww
