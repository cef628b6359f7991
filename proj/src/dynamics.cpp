#include "ww/dynamics.hpp"

#include "ww/spectral_ops.hpp"

#include <array>

namespace ww {

namespace {

StripSolution run_backend(const EllipticProblem& p, const DynamicsParams& dp) {
  if (dp.cross_check) {
    StripSolution d = solve_direct(p);
    StripSolution f = solve_factored(p);
    Real scale = strip_l2(d.v) + 1.0;
    if (strip_l2(d.v - f.v) > 100.0 * dp.tolerance * scale)
      throw NoConvergence("elliptic backends disagree beyond tolerance",
                          strip_l2(d.v - f.v), d.iterations + f.iterations);
    return d;
  }
  return dp.backend == SolverBackend::Direct ? solve_direct(p) : solve_factored(p);
}

// omega_{i,j} (0-based physical indices, j up to d) from the stored components.
StripField omega_entry(const WaveState& s, int i, int j) {
  const GridSpec& g = s.grid;
  if (i == j) return StripField(g);
  if (g.d == 1) {
    // single entry w_{12} = omega
    if (i == 0 && j == 1) return s.omega[0];
    return StripField::from_values(g, -s.omega[0].values());
  }
  // d = 2: omega = (w_{23}, w_{31}, w_{12})
  auto comp = [&](int c, Real sign) {
    return StripField::from_values(g, sign * s.omega[size_t(c)].values());
  };
  if (i == 1 && j == 2) return comp(0, 1.0);
  if (i == 2 && j == 1) return comp(0, -1.0);
  if (i == 2 && j == 0) return comp(1, 1.0);
  if (i == 0 && j == 2) return comp(1, -1.0);
  if (i == 0 && j == 1) return comp(2, 1.0);
  return comp(2, -1.0);  // i == 1, j == 0
}

// RHS of the velocity recovery, component j: sum_i d_i omega_{i,j} in
// physical coordinates (equals (-curl omega)_j for divergence-free fields).
StripField recovery_rhs(const WaveState& s, const FlatteningMap& map, int j) {
  const GridSpec& g = s.grid;
  StripField acc(g);
  for (int i = 0; i <= g.d; ++i) {
    if (i == j) continue;
    StripField wij = omega_entry(s, i, j);
    StripField der = i < g.d ? physical_dx(wij, map, i) : physical_dy(wij, map);
    acc = acc + der;
  }
  return acc;
}

StripVector solve_velocity(const WaveState& s, const FlatteningMap& map,
                           const EllipticCoefficients& co, const DynamicsParams& dp,
                           bool with_omega, bool top_traces, bool bottom_traces) {
  const GridSpec& g = s.grid;
  StripVector out;
  out.reserve(size_t(g.d + 1));
  for (int j = 0; j <= g.d; ++j) {
    EllipticProblem p;
    p.coeffs = co;
    if (with_omega) {
      StripField rhs = recovery_rhs(s, map, j);
      p.F0 = StripField::from_values(g, co.alpha.cwiseProduct(rhs.values()));
    } else {
      p.F0 = StripField(g);
    }
    p.top = top_traces ? (j < g.d ? s.V[size_t(j)] : s.B) : SurfaceField(g);
    p.bottom = bottom_traces && j < g.d ? s.Vb[size_t(j)] : SurfaceField(g);
    p.bottom_kind = BottomKind::Dirichlet;
    p.tolerance = dp.tolerance;
    p.max_iterations = dp.max_iterations;
    out.push_back(run_backend(p, dp).v);
  }
  return out;
}

// div v and ||curl v - omega|| over the strip, physical derivatives.
std::pair<Real, Real> consistency_residuals(const WaveState& s,
                                            const FlatteningMap& map,
                                            const StripVector& v) {
  const GridSpec& g = s.grid;
  StripField div(g);
  for (int i = 0; i < g.d; ++i) div = div + physical_dx(v[size_t(i)], map, i);
  div = div + physical_dy(v[size_t(g.d)], map);
  Real divres = strip_l2(div);

  Real curlres = 0;
  auto curl_defect = [&](int i, int j, const StripField& w) {
    StripField di = i < g.d ? physical_dx(v[size_t(j)], map, i)
                            : physical_dy(v[size_t(j)], map);
    StripField dj = j < g.d ? physical_dx(v[size_t(i)], map, j)
                            : physical_dy(v[size_t(i)], map);
    return strip_l2(di - dj - w);
  };
  if (g.d == 1) {
    curlres = curl_defect(0, 1, s.omega[0]);
  } else {
    Real c1 = curl_defect(1, 2, s.omega[0]);
    Real c2 = curl_defect(2, 0, s.omega[1]);
    Real c3 = curl_defect(0, 1, s.omega[2]);
    curlres = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
  }
  return {divres, curlres};
}

}  // namespace

const StateCache& ensure_cache(const WaveState& s, const DynamicsParams& p) {
  if (s.cache) return *s.cache;
  const GridSpec& g = s.grid;
  Real depth = 1.0 + s.eta.values().minCoeff();
  if (depth < p.h0 / 2)
    throw DepthViolation("state below h0/2 depth: " + std::to_string(depth));

  auto cache = std::make_shared<StateCache>();
  cache->map = build_map(s.eta, std::min(p.h0, depth));
  cache->coeffs = coefficients(cache->map);

  // kinematic surface motion dt_eta = B - V . grad eta
  SurfaceField dt_eta = s.B;
  for (int a = 0; a < g.d; ++a)
    dt_eta = dt_eta - dealias(s.V[size_t(a)] * deriv(s.eta, a));
  cache->dt_eta = dt_eta;
  set_surface_motion(cache->map, dt_eta);

  cache->velocity = solve_velocity(s, cache->map, cache->coeffs, p, true, true, true);
  auto [divres, curlres] = consistency_residuals(s, cache->map, cache->velocity);
  cache->div_residual = divres;
  cache->curl_residual = curlres;

  DNOptions opts;
  opts.tolerance = p.tolerance;
  opts.max_iterations = p.max_iterations;
  opts.backend = p.backend;
  cache->pressure = solve_pressure(cache->map, cache->coeffs, cache->velocity, opts);

  s.cache = cache;
  return *s.cache;
}

StripVector recover_velocity(const WaveState& s, const DynamicsParams& p) {
  return ensure_cache(s, p).velocity;
}

VelocitySplit rotational_split(const WaveState& s, const DynamicsParams& p) {
  const StateCache& c = ensure_cache(s, p);
  VelocitySplit sp;
  sp.v_ir = solve_velocity(s, c.map, c.coeffs, p, false, true, false);
  sp.v_om = solve_velocity(s, c.map, c.coeffs, p, true, false, true);
  return sp;
}

SurfaceVector compute_r_omega(const WaveState& s, const StripVector& v_om,
                              const DynamicsParams& p) {
  const StateCache& c = ensure_cache(s, p);
  const GridSpec& g = s.grid;
  const int top = g.Nz - 1;
  SurfaceVector grad_eta = gradient(s.eta);

  auto top_row = [&](const StripField& f) {
    return RealArray(f.values().row(top).transpose().array());
  };

  // physical derivative traces of each v_om component
  std::vector<RealArray> dy_v(size_t(g.d + 1));
  std::vector<std::array<RealArray, 2>> dx_v(size_t(g.d + 1));
  for (int j = 0; j <= g.d; ++j) {
    dy_v[size_t(j)] = top_row(physical_dy(v_om[size_t(j)], c.map));
    for (int a = 0; a < g.d; ++a)
      dx_v[size_t(j)][size_t(a)] = top_row(physical_dx(v_om[size_t(j)], c.map, a));
  }

  SurfaceVector out;
  out.reserve(size_t(g.d));
  for (int i = 0; i < g.d; ++i) {
    RealArray gi = grad_eta[size_t(i)].values();
    RealArray acc = dy_v[size_t(i)];
    for (int j = 0; j < g.d; ++j)
      acc -= dx_v[size_t(i)][size_t(j)] * grad_eta[size_t(j)].values();
    RealArray vert = dy_v[size_t(g.d)];
    for (int j = 0; j < g.d; ++j)
      vert -= grad_eta[size_t(j)].values() * dx_v[size_t(g.d)][size_t(j)];
    acc += gi * vert;
    // vorticity trace terms: w_{i,d+1} - d_j eta w_{ij} + d_i eta d_j eta w_{j,d+1}
    acc += top_row(omega_entry(s, i, g.d));
    for (int j = 0; j < g.d; ++j) {
      acc -= grad_eta[size_t(j)].values() * top_row(omega_entry(s, i, j));
      acc += gi * grad_eta[size_t(j)].values() * top_row(omega_entry(s, j, g.d));
    }
    out.push_back(SurfaceField::from_values(g, std::move(acc)));
  }
  return out;
}

StateDerivative assemble_rhs(const WaveState& s, const DynamicsParams& p) {
  const StateCache& c = ensure_cache(s, p);
  const GridSpec& g = s.grid;
  StateDerivative d;

  d.d_eta = c.dt_eta;

  const SurfaceField& a = c.pressure.taylor_a;
  d.a_min = a.values().minCoeff();
  d.taylor_violation = d.a_min < p.c0;

  SurfaceVector zeta = gradient(s.eta);
  d.d_V.reserve(size_t(g.d));
  d.d_Vb.reserve(size_t(g.d));
  for (int i = 0; i < g.d; ++i) {
    SurfaceField adv(g);
    SurfaceField advb(g);
    for (int b = 0; b < g.d; ++b) {
      adv = adv + dealias(s.V[size_t(b)] * deriv(s.V[size_t(i)], b));
      advb = advb + dealias(s.Vb[size_t(b)] * deriv(s.Vb[size_t(i)], b));
    }
    d.d_V.push_back(SurfaceField::from_values(
        g, -adv.values() - dealias(a * zeta[size_t(i)]).values()));
    d.d_Vb.push_back(SurfaceField::from_values(
        g, -advb.values() - c.pressure.bottom_grad[size_t(i)].values()));
  }

  SurfaceField advB(g);
  for (int b = 0; b < g.d; ++b)
    advB = advB + dealias(s.V[size_t(b)] * deriv(s.B, b));
  d.d_B = SurfaceField::from_values(g, -advB.values() + (a.values() - 1.0));

  // vorticity transport in flattened coordinates; stretching only for d = 2
  StripVector vbar = transport_velocity(c.velocity, c.map);
  d.d_omega.reserve(s.omega.size());
  for (size_t comp = 0; comp < s.omega.size(); ++comp) {
    const StripField& w = s.omega[comp];
    StripField adv(g);
    for (int ax = 0; ax < g.d; ++ax)
      adv = adv + dealias(pointwise(vbar[size_t(ax)], deriv_x(w, ax)));
    adv = adv + dealias(pointwise(vbar[size_t(g.d)], dz(w)));
    RealMatrix rhs = -adv.values();
    if (g.d == 2) {
      // vector stretching (omega . grad) v^i with physical derivatives;
      // component order (w_23, w_31, w_12) pairs with v^(1,2,3) as i = comp
      int i = int(comp);
      StripField sx(g);
      for (int j = 0; j < 3; ++j) {
        StripField dvi = j < 2 ? physical_dx(c.velocity[size_t(i)], c.map, j)
                               : physical_dy(c.velocity[size_t(i)], c.map);
        // omega vector component j
        const StripField& wj = s.omega[size_t(j)];
        sx = sx + dealias(pointwise(wj, dvi));
      }
      rhs += sx.values();
    }
    d.d_omega.push_back(StripField::from_values(g, std::move(rhs)));
  }
  return d;
}

namespace {

WaveState state_axpy(const WaveState& s, Real dt, const StateDerivative& d) {
  WaveState out;
  out.t = s.t + dt;
  out.grid = s.grid;
  out.eta = SurfaceField::from_values(s.grid, s.eta.values() + dt * d.d_eta.values());
  out.B = SurfaceField::from_values(s.grid, s.B.values() + dt * d.d_B.values());
  for (size_t i = 0; i < s.V.size(); ++i) {
    out.V.push_back(SurfaceField::from_values(
        s.grid, s.V[i].values() + dt * d.d_V[i].values()));
    out.Vb.push_back(SurfaceField::from_values(
        s.grid, s.Vb[i].values() + dt * d.d_Vb[i].values()));
  }
  for (size_t i = 0; i < s.omega.size(); ++i)
    out.omega.push_back(StripField::from_values(
        s.grid, s.omega[i].values() + dt * d.d_omega[i].values()));
  return out;
}

}  // namespace

WaveState rk4_step(const WaveState& s, Real dt, const DynamicsParams& p) {
  if (!(dt > 0) || !std::isfinite(dt))
    throw std::invalid_argument("rk4_step: dt must be positive and finite");
  StateDerivative k1 = assemble_rhs(s, p);
  WaveState s2 = state_axpy(s, dt / 2, k1);
  StateDerivative k2 = assemble_rhs(s2, p);
  WaveState s3 = state_axpy(s, dt / 2, k2);
  StateDerivative k3 = assemble_rhs(s3, p);
  WaveState s4 = state_axpy(s, dt, k3);
  StateDerivative k4 = assemble_rhs(s4, p);

  WaveState out;
  out.t = s.t + dt;
  out.grid = s.grid;
  auto mix = [&](const SurfaceField& y, const SurfaceField& a, const SurfaceField& b,
                 const SurfaceField& c, const SurfaceField& d2) {
    return SurfaceField::from_values(
        s.grid, y.values() + dt / 6.0 * (a.values() + 2.0 * b.values() +
                                         2.0 * c.values() + d2.values()));
  };
  out.eta = mix(s.eta, k1.d_eta, k2.d_eta, k3.d_eta, k4.d_eta);
  out.B = mix(s.B, k1.d_B, k2.d_B, k3.d_B, k4.d_B);
  for (size_t i = 0; i < s.V.size(); ++i) {
    out.V.push_back(mix(s.V[i], k1.d_V[i], k2.d_V[i], k3.d_V[i], k4.d_V[i]));
    out.Vb.push_back(mix(s.Vb[i], k1.d_Vb[i], k2.d_Vb[i], k3.d_Vb[i], k4.d_Vb[i]));
  }
  for (size_t i = 0; i < s.omega.size(); ++i) {
    out.omega.push_back(StripField::from_values(
        s.grid, s.omega[i].values() +
                    dt / 6.0 * (k1.d_omega[i].values() + 2.0 * k2.d_omega[i].values() +
                                2.0 * k3.d_omega[i].values() + k4.d_omega[i].values())));
  }
  if (p.filter) {
    out.eta = exp_filter(out.eta);
    out.B = exp_filter(out.B);
    for (auto& f : out.V) f = exp_filter(f);
    for (auto& f : out.Vb) f = exp_filter(f);
    for (auto& f : out.omega) f = exp_filter(f);
  }
  return out;
}

Real cfl_timestep(const WaveState& s, const DynamicsParams& p) {
  const StateCache& c = ensure_cache(s, p);
  Real amax = std::max(c.pressure.taylor_a.values().maxCoeff(), 1e-6);
  Real kmax = kTwoPi / s.grid.L * s.grid.dealias_cut();
  return p.cfl_safety / std::sqrt(amax * kmax);
}

}  // namespace ww
