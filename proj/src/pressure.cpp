#include "ww/pressure.hpp"

#include "ww/spectral_ops.hpp"

#include <vector>

namespace ww {

PressureResult solve_pressure(const FlatteningMap& map,
                              const EllipticCoefficients& co,
                              const StripVector& velocity,
                              const DNOptions& opts) {
  const GridSpec& g = map.grid;
  if (int(velocity.size()) != g.d + 1)
    throw std::invalid_argument("solve_pressure: expected d+1 velocity components");
  const int top = g.Nz - 1;
  const Index n = g.num_points();

  // S = d_i v^j d_j v^i over physical indices 1..d+1
  std::vector<std::vector<RealMatrix>> Dv(size_t(g.d + 1));
  for (int j = 0; j <= g.d; ++j) {
    Dv[size_t(j)].resize(size_t(g.d + 1));
    for (int i = 0; i <= g.d; ++i) {
      StripField der = i < g.d ? physical_dx(velocity[size_t(j)], map, i)
                               : physical_dy(velocity[size_t(j)], map);
      Dv[size_t(j)][size_t(i)] = der.values();
    }
  }
  RealMatrix S = RealMatrix::Zero(g.Nz, n);
  for (int i = 0; i <= g.d; ++i)
    for (int j = 0; j <= g.d; ++j)
      S += Dv[size_t(j)][size_t(i)].cwiseProduct(Dv[size_t(i)][size_t(j)]);

  // P1 = P + y: Lap P1 = -S, P1|_surface = eta, dP1/dy|_bottom = 0
  EllipticProblem p;
  p.coeffs = co;
  p.F0 = StripField::from_values(g, co.alpha.cwiseProduct(-S));
  p.top = map.eta;
  p.bottom = SurfaceField(g);
  p.bottom_kind = BottomKind::Neumann;
  p.tolerance = opts.tolerance;
  p.max_iterations = opts.max_iterations;
  StripSolution sol = opts.backend == SolverBackend::Direct ? solve_direct(p)
                                                            : solve_factored(p);

  PressureResult out;
  out.P1 = sol.v;
  out.P = StripField::from_values(g, sol.v.values() - map.rho);
  out.solver_residual = sol.residual;

  // a = -dP/dy|_surface = 1 - dz P1(.,0) / dz rho(.,0)
  RealArray a =
      1.0 - sol.dz_top.values() / map.dz_rho.row(top).transpose().array();
  out.taylor_a = SurfaceField::from_values(g, std::move(a));

  // grad_x P at the bottom; grad rho vanishes there so the chain rule is plain
  SurfaceField pbot = sol.v.bottom();
  out.bottom_grad = gradient(pbot);
  return out;
}

TaylorCheck taylor_sign_check(const PressureResult& pr, Real c0) {
  TaylorCheck t;
  t.min_a = pr.taylor_a.values().minCoeff();
  t.violated = t.min_a < c0;
  return t;
}

}  // namespace ww
