#include "ww/flattening.hpp"

#include "ww/spectral_ops.hpp"

#include <cmath>

namespace ww {

namespace {

// Row of e^{delta z |D|} applied to a surface field, as physical samples.
RealArray smoothed_level(const SurfaceField& f, Real delta, Real z, Real extra_power) {
  const GridSpec& g = f.grid();
  ComplexArray c = f.coeffs();
  for (Index m = 0; m < c.size(); ++m) {
    Real r = g.xi_abs(m);
    c[m] *= std::exp(delta * z * r) * std::pow(r, extra_power);
  }
  RealArray out;
  dft_inverse(g, c, out);
  return out;
}

void fill_map(FlatteningMap& map) {
  const GridSpec& g = map.grid;
  const ChebGrid& zg = cheb_grid(g.Nz);
  const Index n = g.num_points();
  const Real delta = map.delta;

  map.rho.resize(g.Nz, n);
  map.dz_rho.resize(g.Nz, n);
  map.d2z_rho.resize(g.Nz, n);
  map.lap_rho.resize(g.Nz, n);
  map.grad_rho.assign(g.d, RealMatrix(g.Nz, n));
  map.grad_dz_rho.assign(g.d, RealMatrix(g.Nz, n));

  SurfaceField lap_eta = laplacian(map.eta);
  SurfaceVector grad_eta = gradient(map.eta);

  for (int j = 0; j < g.Nz; ++j) {
    Real z = zg.z[j];
    RealArray e0 = smoothed_level(map.eta, delta, z, 0.0);   // e^{dz|D|} eta
    RealArray e1 = smoothed_level(map.eta, delta, z, 1.0);   // e^{dz|D|} |D| eta
    RealArray e2 = smoothed_level(map.eta, delta, z, 2.0);   // e^{dz|D|} |D|^2 eta
    map.rho.row(j) = (z + (1.0 + z) * e0).matrix().transpose();
    map.dz_rho.row(j) = (1.0 + e0 + (1.0 + z) * delta * e1).matrix().transpose();
    map.d2z_rho.row(j) =
        (2.0 * delta * e1 + (1.0 + z) * delta * delta * e2).matrix().transpose();
    map.lap_rho.row(j) =
        ((1.0 + z) * smoothed_level(lap_eta, delta, z, 0.0)).matrix().transpose();
    for (int a = 0; a < g.d; ++a) {
      RealArray ga = smoothed_level(grad_eta[size_t(a)], delta, z, 0.0);
      RealArray ga1 = smoothed_level(grad_eta[size_t(a)], delta, z, 1.0);
      map.grad_rho[size_t(a)].row(j) = ((1.0 + z) * ga).matrix().transpose();
      map.grad_dz_rho[size_t(a)].row(j) =
          (ga + (1.0 + z) * delta * ga1).matrix().transpose();
    }
  }
  // exact endpoint values
  map.rho.row(0).setConstant(-1.0);
  map.rho.row(g.Nz - 1) = map.eta.values().matrix().transpose();
}

}  // namespace

FlatteningMap build_map(const SurfaceField& eta, Real h0, std::optional<Real> delta) {
  if (!(h0 > 0)) throw std::invalid_argument("build_map: h0 must be positive");
  Real depth = 1.0 + eta.values().minCoeff();
  if (depth < h0)
    throw DepthViolation("build_map: min(1+eta) = " + std::to_string(depth) +
                         " below h0 = " + std::to_string(h0));
  FlatteningMap map;
  map.grid = eta.grid();
  map.eta = eta;
  map.h0 = h0;

  if (delta) {
    map.delta = *delta;
    fill_map(map);
    if (map.min_dz_rho() < h0 / 2)
      throw FlatteningFailure("build_map: dz_rho < h0/2 at requested delta");
    return map;
  }
  map.delta = 0.5;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    fill_map(map);
    if (map.min_dz_rho() >= h0 / 2) return map;
    map.delta *= 0.5;
  }
  throw FlatteningFailure("build_map: no delta with dz_rho >= h0/2 after 20 halvings");
}

void set_surface_motion(FlatteningMap& map, const SurfaceField& dt_eta) {
  const GridSpec& g = map.grid;
  const ChebGrid& zg = cheb_grid(g.Nz);
  RealMatrix dt(g.Nz, g.num_points());
  for (int j = 0; j < g.Nz; ++j) {
    Real z = zg.z[j];
    dt.row(j) =
        ((1.0 + z) * smoothed_level(dt_eta, map.delta, z, 0.0)).matrix().transpose();
  }
  map.dt_rho = std::move(dt);
}

EllipticCoefficients coefficients(const FlatteningMap& map) {
  const GridSpec& g = map.grid;
  EllipticCoefficients co;
  co.grid = g;

  RealMatrix grad2 = RealMatrix::Zero(map.rho.rows(), map.rho.cols());
  for (int a = 0; a < g.d; ++a)
    grad2 += map.grad_rho[size_t(a)].cwiseProduct(map.grad_rho[size_t(a)]);
  RealMatrix denom = (grad2.array() + 1.0).matrix();

  co.alpha = map.dz_rho.cwiseProduct(map.dz_rho).cwiseQuotient(denom);
  co.beta.assign(g.d, RealMatrix());
  for (int a = 0; a < g.d; ++a)
    co.beta[size_t(a)] =
        -2.0 * map.dz_rho.cwiseProduct(map.grad_rho[size_t(a)]).cwiseQuotient(denom);

  RealMatrix acc = map.d2z_rho + co.alpha.cwiseProduct(map.lap_rho);
  for (int a = 0; a < g.d; ++a)
    acc += co.beta[size_t(a)].cwiseProduct(map.grad_dz_rho[size_t(a)]);
  co.gamma = acc.cwiseQuotient(map.dz_rho);

  // ellipticity constant: min over the grid and retained directions of
  // (4 alpha |xi|^2 - (beta.xi)^2) / |xi|^2 = 4 alpha - (beta . xi/|xi|)^2.
  Real c2 = std::numeric_limits<Real>::max();
  if (g.d == 1) {
    c2 = (4.0 * co.alpha - co.beta[0].cwiseProduct(co.beta[0])).minCoeff();
  } else {
    const int ndir = 16;
    for (int t = 0; t < ndir; ++t) {
      Real th = kTwoPi * t / ndir;
      RealMatrix bdot = std::cos(th) * co.beta[0] + std::sin(th) * co.beta[1];
      c2 = std::min(c2, (4.0 * co.alpha - bdot.cwiseProduct(bdot)).minCoeff());
    }
  }
  co.ellipticity_c2 = c2;
  return co;
}

// ---------------------------------------------------------------------------
// Column interpolation (cubic Lagrange on the 4 nearest nodes)
// ---------------------------------------------------------------------------

namespace {

// Interpolate samples (xs ascending, ys) at point x.
Real cubic_interp(const Real* xs, const Real* ys, int n, Real x) {
  // locate the interval by binary search
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (xs[mid] <= x ? lo : hi) = mid;
  }
  int i0 = std::clamp(lo - 1, 0, n - 4);
  Real out = 0;
  for (int a = 0; a < 4; ++a) {
    Real w = 1;
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      w *= (x - xs[i0 + b]) / (xs[i0 + a] - xs[i0 + b]);
    }
    out += w * ys[i0 + a];
  }
  return out;
}

}  // namespace

// Column node y_j(p) = -1 + (1 + eta_p)(1 + z_j): the linearly stretched
// z-grid, so for eta = 0 the column nodes coincide with the strip levels.
Real column_node(const ChebGrid& zg, Real eta_p, int j) {
  return -1.0 + (1.0 + eta_p) * (1.0 + zg.z[j]);
}

StripField pullback(const PhysicalColumns& f, const FlatteningMap& map) {
  const GridSpec& g = map.grid;
  require_same_grid(g, f.grid, "pullback");
  const ChebGrid& zg = cheb_grid(g.Nz);
  RealMatrix out(g.Nz, g.num_points());
  std::vector<Real> ys(g.Nz), vs(g.Nz);
  for (Index p = 0; p < g.num_points(); ++p) {
    Real top = f.eta_vals[p];
    for (int j = 0; j < g.Nz; ++j) {
      ys[size_t(j)] = column_node(zg, top, j);
      vs[size_t(j)] = f.values(j, p);
    }
    for (int j = 0; j < g.Nz; ++j) {
      Real y = map.rho(j, p);
      if (y < -1.0 - 1e-12 || y > top + 1e-12)
        throw std::invalid_argument("pullback: image point outside the column");
      out(j, p) = cubic_interp(ys.data(), vs.data(), g.Nz, y);
    }
  }
  return StripField::from_values(g, std::move(out));
}

PhysicalColumns pushforward(const StripField& f, const FlatteningMap& map) {
  const GridSpec& g = map.grid;
  require_same_grid(g, f.grid(), "pushforward");
  const ChebGrid& zg = cheb_grid(g.Nz);
  PhysicalColumns out;
  out.grid = g;
  out.eta_vals = map.eta.values();
  out.values.resize(g.Nz, g.num_points());
  const RealMatrix& vals = f.values();
  std::vector<Real> ys(g.Nz), vs(g.Nz);
  for (Index p = 0; p < g.num_points(); ++p) {
    for (int j = 0; j < g.Nz; ++j) {
      ys[size_t(j)] = map.rho(j, p);  // monotone in j since dz_rho > 0
      vs[size_t(j)] = vals(j, p);
    }
    Real top = out.eta_vals[p];
    for (int j = 0; j < g.Nz; ++j)
      out.values(j, p) = cubic_interp(ys.data(), vs.data(), g.Nz,
                                      column_node(zg, top, j));
  }
  return out;
}

StripVector transport_velocity(const StripVector& v_tilde, const FlatteningMap& map) {
  const GridSpec& g = map.grid;
  if (!map.dt_rho)
    throw std::invalid_argument("transport_velocity: map lacks dt_rho");
  if (int(v_tilde.size()) != g.d + 1)
    throw std::invalid_argument("transport_velocity: expected d+1 components");
  StripVector out;
  out.reserve(v_tilde.size());
  for (int a = 0; a < g.d; ++a) out.push_back(v_tilde[size_t(a)]);
  RealMatrix vert = v_tilde[size_t(g.d)].values() - *map.dt_rho;
  for (int a = 0; a < g.d; ++a)
    vert -= v_tilde[size_t(a)].values().cwiseProduct(map.grad_rho[size_t(a)]);
  out.push_back(StripField::from_values(g, vert.cwiseQuotient(map.dz_rho)));
  return out;
}

StripField physical_dy(const StripField& f, const FlatteningMap& map) {
  return StripField::from_values(
      f.grid(), dz(f).values().cwiseQuotient(map.dz_rho));
}

StripField physical_dx(const StripField& f, const FlatteningMap& map, int axis) {
  RealMatrix dy = dz(f).values().cwiseQuotient(map.dz_rho);
  return StripField::from_values(
      f.grid(),
      deriv_x(f, axis).values() - dy.cwiseProduct(map.grad_rho[size_t(axis)]));
}

}  // namespace ww
