#include "ww/elliptic.hpp"

#include "ww/spectral_ops.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace ww {

namespace {

// ---------------------------------------------------------------------------
// Per-mode dense solver for the flat operator d2_z - |xi|^2 with the problem's
// boundary rows; factorizations cached across calls.
// ---------------------------------------------------------------------------

using FlatKey = std::tuple<int, int, long long, long long>;  // Nz, bottom, n2, L bits

std::map<FlatKey, std::shared_ptr<const Eigen::PartialPivLU<RealMatrix>>> flat_lu_cache;
std::mutex flat_lu_mutex;

long long l_bits(Real L) {
  long long b;
  static_assert(sizeof(b) == sizeof(L));
  std::memcpy(&b, &L, sizeof(b));
  return b;
}

// Integer squared frequency of a flat mode (xi^2 = (2pi/L)^2 * n2).
long long mode_n2(const GridSpec& g, Index m) {
  long long n2 = 0;
  for (int a = 0; a < g.d; ++a) {
    long long f = g.signed_freq(g.axis_index(m, a));
    n2 += f * f;
  }
  return n2;
}

std::shared_ptr<const Eigen::PartialPivLU<RealMatrix>> flat_lu(
    const GridSpec& g, BottomKind bottom, Index mode) {
  FlatKey key{g.Nz, int(bottom), mode_n2(g, mode), l_bits(g.L)};
  {
    std::lock_guard<std::mutex> lock(flat_lu_mutex);
    auto it = flat_lu_cache.find(key);
    if (it != flat_lu_cache.end()) return it->second;
  }
  const ChebGrid& zg = cheb_grid(g.Nz);
  Real xi2 = g.xi_abs2(mode);
  RealMatrix M = zg.D2;
  M.diagonal().array() -= xi2;
  M.row(g.Nz - 1).setZero();
  M(g.Nz - 1, g.Nz - 1) = 1.0;  // Dirichlet top
  if (bottom == BottomKind::Dirichlet) {
    M.row(0).setZero();
    M(0, 0) = 1.0;
  } else {
    M.row(0) = zg.D.row(0);  // Neumann bottom
  }
  auto lu = std::make_shared<const Eigen::PartialPivLU<RealMatrix>>(M);
  std::lock_guard<std::mutex> lock(flat_lu_mutex);
  flat_lu_cache.emplace(key, lu);
  return lu;
}

// Stable ratios of hyperbolic functions for k >= 0 and -1 <= z <= 0:
//   sinh(k(z+1))/sinh(k), sinh(-kz)/sinh(k), cosh(k(z+1))/cosh(k).
Real sinh_ratio(Real k, Real a) {  // sinh(k a)/sinh(k), 0 <= a <= 1
  if (k == 0) return a;
  return std::exp(k * (a - 1.0)) * (1.0 - std::exp(-2.0 * k * a)) /
         (1.0 - std::exp(-2.0 * k));
}
Real cosh_ratio(Real k, Real a) {
  if (k == 0) return 1.0;
  return std::exp(k * (a - 1.0)) * (1.0 + std::exp(-2.0 * k * a)) /
         (1.0 + std::exp(-2.0 * k));
}
// Homogeneous flat solution with Dirichlet top data ftop and the requested
// bottom condition; bottom_data is the Dirichlet value or (for
// neumann_data = true) the prescribed dz at z = -1.
ComplexMatrix flat_homogeneous(const GridSpec& g, const ComplexArray& ftop,
                               BottomKind bottom, const ComplexArray& fbot,
                               bool neumann_data, const ComplexArray* gbot) {
  const ChebGrid& zg = cheb_grid(g.Nz);
  ComplexMatrix out(g.Nz, g.num_modes());
  for (Index m = 0; m < g.num_modes(); ++m) {
    Real k = g.xi_abs(m);
    for (int j = 0; j < g.Nz; ++j) {
      Real z = zg.z[j];
      Complex val;
      if (bottom == BottomKind::Dirichlet) {
        val = ftop[m] * Complex(sinh_ratio(k, z + 1.0)) +
              fbot[m] * Complex(sinh_ratio(k, -z));
      } else if (!neumann_data) {
        val = ftop[m] * Complex(cosh_ratio(k, z + 1.0));
      } else {
        // top Dirichlet 0, dz(-1) = gbot: v = g sinh(kz)/(k cosh k)
        Complex gb = (*gbot)[m];
        if (k == 0)
          val = gb * z;
        else
          val = gb * Complex(-sinh_ratio(k, -z) / k *
                             (1.0 - std::exp(-2.0 * k)) /
                             (1.0 + std::exp(-2.0 * k)));
      }
      out(j, m) = val;
    }
  }
  return out;
}

// Particular flat solution (zero boundary data) via the cached LU.
ComplexMatrix flat_particular(const GridSpec& g, BottomKind bottom,
                              const ComplexMatrix& Fc) {
  ComplexMatrix out(g.Nz, g.num_modes());
  Eigen::VectorXd rhs_re(g.Nz), rhs_im(g.Nz);
  for (Index m = 0; m < g.num_modes(); ++m) {
    auto lu = flat_lu(g, bottom, m);
    rhs_re = Fc.col(m).real();
    rhs_im = Fc.col(m).imag();
    rhs_re[0] = rhs_re[g.Nz - 1] = 0.0;
    rhs_im[0] = rhs_im[g.Nz - 1] = 0.0;
    Eigen::VectorXd sr = lu->solve(rhs_re);
    Eigen::VectorXd si = lu->solve(rhs_im);
    for (int j = 0; j < g.Nz; ++j) out(j, m) = Complex(sr[j], si[j]);
  }
  return out;
}

bool coefficients_trivial(const EllipticCoefficients& co) {
  Real dev = (co.alpha.array() - 1.0).abs().maxCoeff();
  for (const auto& b : co.beta) dev = std::max(dev, b.array().abs().maxCoeff());
  dev = std::max(dev, co.gamma.array().abs().maxCoeff());
  return dev < 1e-13;
}

SurfaceField top_derivative(const StripField& v) {
  const GridSpec& g = v.grid();
  const ChebGrid& zg = cheb_grid(g.Nz);
  RealArray dz_top = (zg.D.row(g.Nz - 1) * v.values()).transpose().array();
  return SurfaceField::from_values(g, std::move(dz_top));
}

Real interior_residual_norm(const GridSpec& g, StripField& r) {
  r.mutable_values().row(0).setZero();
  r.mutable_values().row(g.Nz - 1).setZero();
  return strip_l2(r);
}

Real problem_scale(const EllipticProblem& p) {
  Real s = strip_l2(p.F0) + l2_norm(p.top);
  if (p.bottom_kind == BottomKind::Dirichlet) s += l2_norm(p.bottom);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

StripField apply_operator(const EllipticCoefficients& co, const StripField& v) {
  const GridSpec& g = co.grid;
  const ChebGrid& zg = cheb_grid(g.Nz);
  const ComplexMatrix& c = v.coeffs();

  ComplexMatrix vz_c(g.Nz, g.num_modes());
  vz_c.real() = zg.D * c.real();
  vz_c.imag() = zg.D * c.imag();
  StripField vz = StripField::from_coeffs(g, vz_c);

  ComplexMatrix vzz_c(g.Nz, g.num_modes());
  vzz_c.real() = zg.D2 * c.real();
  vzz_c.imag() = zg.D2 * c.imag();
  StripField vzz = StripField::from_coeffs(g, vzz_c);

  ComplexMatrix lap_c = c;
  for (Index m = 0; m < g.num_modes(); ++m) lap_c.col(m) *= -g.xi_abs2(m);
  StripField lap = StripField::from_coeffs(g, std::move(lap_c));

  RealMatrix out = vzz.values() + co.alpha.cwiseProduct(lap.values()) -
                   co.gamma.cwiseProduct(vz.values());
  for (int a = 0; a < g.d; ++a)
    out += co.beta[size_t(a)].cwiseProduct(deriv_x(vz, a).values());
  return StripField::from_values(g, std::move(out));
}

StripSolution solve_flat(const EllipticProblem& p) {
  const GridSpec& g = p.coeffs.grid;
  ComplexMatrix vals =
      flat_homogeneous(g, p.top.coeffs(), p.bottom_kind, p.bottom.coeffs(),
                       false, nullptr);
  if (p.F0.max_abs() > 0)
    vals += flat_particular(g, p.bottom_kind, p.F0.coeffs());
  StripSolution s;
  s.v = StripField::from_coeffs(g, std::move(vals));
  s.dz_top = top_derivative(s.v);
  s.iterations = 1;
  s.residual = 0;
  return s;
}

// ---------------------------------------------------------------------------
// Shared defect-correction driver: inner(r) produces an approximate solution
// of L e = r with homogeneous boundary conditions.
// ---------------------------------------------------------------------------

namespace {

// Re-impose the boundary rows on the current iterate: Dirichlet rows exactly,
// a Neumann bottom by adding the analytic homogeneous lift of the defect in
// the discrete derivative row (inner solvers only approximate it).
void restore_boundary(const EllipticProblem& p, StripField& v) {
  const GridSpec& g = p.coeffs.grid;
  v.mutable_values().row(g.Nz - 1) = p.top.values().matrix().transpose();
  if (p.bottom_kind == BottomKind::Dirichlet) {
    v.mutable_values().row(0) = p.bottom.values().matrix().transpose();
    return;
  }
  const ChebGrid& zg = cheb_grid(g.Nz);
  RealArray ddef = -(zg.D.row(0) * v.values()).transpose().array();
  SurfaceField gb = SurfaceField::from_values(g, std::move(ddef));
  ComplexArray gbc = gb.coeffs();
  ComplexArray zero = ComplexArray::Zero(g.num_modes());
  ComplexMatrix lift = flat_homogeneous(g, zero, BottomKind::Neumann, zero, true, &gbc);
  v = StripField::from_values(
      g, v.values() + StripField::from_coeffs(g, std::move(lift)).values());
}

template <typename Inner>
StripSolution defect_correction(const EllipticProblem& p, const char* name,
                                Inner&& inner) {
  const GridSpec& g = p.coeffs.grid;
  StripSolution sol = solve_flat(p);
  if (coefficients_trivial(p.coeffs)) return sol;

  Real scale = problem_scale(p);
  if (scale == 0) return sol;  // zero data: zero solution

  Real damping = 1.0;
  Real prev_norm = std::numeric_limits<Real>::max();
  Real initial_norm = 0;
  for (int it = 1; it <= p.max_iterations; ++it) {
    StripField r = p.F0 - apply_operator(p.coeffs, sol.v);
    Real rn = interior_residual_norm(g, r);
    if (it == 1) initial_norm = rn;
    if (rn <= p.tolerance * scale) {
      sol.dz_top = top_derivative(sol.v);
      sol.residual = rn / scale;
      sol.iterations = it;
      return sol;
    }
    if (rn > 1e4 * (initial_norm + scale))
      throw NoConvergence(std::string(name) + ": residual diverged", rn / scale, it);
    if (rn > prev_norm) damping = 0.5;  // oscillation fallback
    prev_norm = rn;
    StripField e = inner(r);
    sol.v = StripField::from_values(g, sol.v.values() + damping * e.values());
    restore_boundary(p, sol.v);
  }
  StripField r = p.F0 - apply_operator(p.coeffs, sol.v);
  Real rn = interior_residual_norm(g, r);
  throw NoConvergence(std::string(name) + ": max iterations reached", rn / scale,
                      p.max_iterations);
}

}  // namespace

StripSolution solve_direct(const EllipticProblem& p) {
  const GridSpec& g = p.coeffs.grid;
  return defect_correction(p, "solve_direct", [&](const StripField& r) {
    return StripField::from_coeffs(
        g, flat_particular(g, p.bottom_kind, r.coeffs()));
  });
}

// ---------------------------------------------------------------------------
// Factorization symbols and the parabolic march
// ---------------------------------------------------------------------------

FactorizationSymbols factorization_symbols(const EllipticCoefficients& co) {
  const GridSpec& g = co.grid;
  if (!(co.ellipticity_c2 > 0))
    throw EllipticityViolation("factorization_symbols: 4a|xi|^2-(b.xi)^2 <= 0");
  FactorizationSymbols out;
  out.c1 = std::sqrt(co.ellipticity_c2) / 2.0;
  out.a_sym.reserve(g.Nz);
  out.A_sym.reserve(g.Nz);
  for (int j = 0; j < g.Nz; ++j) {
    ComplexMatrix ta(g.num_points(), g.num_modes());
    ComplexMatrix tA(g.num_points(), g.num_modes());
    for (Index m = 0; m < g.num_modes(); ++m) {
      Real xi2 = g.xi_abs2(m);
      for (Index q = 0; q < g.num_points(); ++q) {
        Real bxi = 0;
        for (int ax = 0; ax < g.d; ++ax)
          bxi += co.beta[size_t(ax)](j, q) * g.xi(m, ax);
        Real disc = 4.0 * co.alpha(j, q) * xi2 - bxi * bxi;
        if (xi2 > 0 && disc <= 0)
          throw EllipticityViolation("factorization_symbols: nonpositive discriminant");
        Real root = std::sqrt(std::max<Real>(disc, 0));
        ta(q, m) = 0.5 * Complex(-root, -bxi);
        tA(q, m) = 0.5 * Complex(root, -bxi);
      }
    }
    out.a_sym.emplace_back(g, 1.0, std::move(ta));
    out.A_sym.emplace_back(g, 1.0, std::move(tA));
  }
  return out;
}

namespace {

// x-mean of each mode column of a symbol table.
ComplexArray symbol_mean(const SymbolField& s) {
  return s.table().colwise().mean().transpose().array();
}

}  // namespace

StripField parabolic_march(const std::vector<SymbolField>& a_levels,
                           const SurfaceField& w0, const StripField& f,
                           MarchDirection direction) {
  const GridSpec& g = f.grid();
  const ChebGrid& zg = cheb_grid(g.Nz);
  if (int(a_levels.size()) != g.Nz)
    throw std::invalid_argument("parabolic_march: one symbol per level required");

  // ellipticity check, direction-adjusted: a forward march damps when
  // Re a >= c1|xi|, a backward march when Re a <= -c1|xi|.
  const bool fwd_check = direction == MarchDirection::Forward;
  Real c1 = std::numeric_limits<Real>::max();
  for (const SymbolField& s : a_levels) {
    const ComplexMatrix& T = s.table();
    for (Index m = 0; m < g.num_modes(); ++m) {
      Real r = g.xi_abs(m);
      if (r < 1.0) continue;
      Real q = fwd_check ? T.col(m).real().minCoeff() : -T.col(m).real().maxCoeff();
      c1 = std::min(c1, q / r);
    }
  }
  if (!(c1 > 0))
    throw EllipticityViolation("parabolic_march: symbol not elliptic for direction");

  // Per-level mean multipliers; the equation marched is dz w = -T_a w + f
  // with T_a = mean_a(D) psi(D) + T_{a - mean_a}. Smoothing is linear and the
  // mean passes through it, so the remainder applies through the original
  // symbol's cached tables: T_{a-mean} w = T_a w - mean psi(D) w.
  std::vector<ComplexArray> mean(a_levels.size());
  for (size_t j = 0; j < a_levels.size(); ++j) mean[j] = symbol_mean(a_levels[j]);
  const LPTables& lt = lp_tables(g);

  auto explicit_term = [&](int level, const SurfaceField& w) {
    SurfaceField taw = paradiff_apply(a_levels[size_t(level)], w);
    ComplexArray diag = w.coeffs() * mean[size_t(level)] * lt.psi.cast<Complex>();
    SurfaceField diag_f = SurfaceField::from_coeffs(g, std::move(diag));
    return SurfaceField::from_values(
        g, f.values().row(level).transpose().array() - taw.values() + diag_f.values());
  };
  auto diag_mult = [&](int level, int next, Real h) {
    // e^{-h * mean_a(xi) psi(xi)} per mode, mean averaged across the step
    ComplexArray e(g.num_modes());
    for (Index m = 0; m < g.num_modes(); ++m) {
      Complex mid = 0.5 * (mean[size_t(level)][m] + mean[size_t(next)][m]);
      e[m] = std::exp(-h * mid * lt.psi[m]);
    }
    return e;
  };

  StripField out(g);
  const bool fwd = direction == MarchDirection::Forward;
  int start = fwd ? 0 : g.Nz - 1;
  int stop = fwd ? g.Nz - 1 : 0;
  int step = fwd ? 1 : -1;
  SurfaceField w = w0;
  out.set_level(start, w);
  Real scale0 = std::max(l2_norm(w0), strip_l2(f)) + 1e-300;

  for (int j = start; j != stop; j += step) {
    int jn = j + step;
    Real h = zg.z[jn] - zg.z[j];
    ComplexArray E = diag_mult(j, jn, h);
    SurfaceField G0 = explicit_term(j, w);
    // predictor
    ComplexArray wp = (w.coeffs() + h * G0.coeffs()) * E;
    SurfaceField wstar = SurfaceField::from_coeffs(g, std::move(wp));
    SurfaceField G1 = explicit_term(jn, wstar);
    ComplexArray wn =
        w.coeffs() * E + (h / 2.0) * (G0.coeffs() * E + G1.coeffs());
    w = SurfaceField::from_coeffs(g, std::move(wn));
    out.set_level(jn, w);
    if (l2_norm(w) > 10.0 * std::max(scale0, l2_norm(out.level(j))))
      throw NoConvergence("parabolic_march: instability detected", l2_norm(w), jn);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factored backend
// ---------------------------------------------------------------------------

StripSolution solve_factored(const EllipticProblem& p) {
  const GridSpec& g = p.coeffs.grid;
  if (coefficients_trivial(p.coeffs)) return solve_flat(p);
  FactorizationSymbols sym = factorization_symbols(p.coeffs);

  // marches solve dz w + T_s w = r, so pass s = -a (forward) and s = -A (backward)
  std::vector<SymbolField> neg_a, neg_A;
  neg_a.reserve(g.Nz);
  neg_A.reserve(g.Nz);
  for (int j = 0; j < g.Nz; ++j) {
    neg_a.push_back(sym.a_sym[size_t(j)].scaled(-1.0));
    neg_A.push_back(sym.A_sym[size_t(j)].scaled(-1.0));
  }

  return defect_correction(p, "solve_factored", [&](const StripField& r) {
    // (dz - T_a) w = r marched up from w(-1) = 0
    StripField w = parabolic_march(neg_a, SurfaceField(g), r, MarchDirection::Forward);
    // (dz - T_A) e = w marched down from e(0) = 0
    StripField e = parabolic_march(neg_A, SurfaceField(g), w, MarchDirection::Backward);
    // boundary fix at the bottom
    if (p.bottom_kind == BottomKind::Dirichlet) {
      ComplexArray mismatch = -e.bottom().coeffs();
      ComplexArray zero = ComplexArray::Zero(g.num_modes());
      ComplexMatrix fix = flat_homogeneous(g, zero, BottomKind::Dirichlet,
                                           mismatch, false, nullptr);
      e = StripField::from_values(
          g, e.values() + StripField::from_coeffs(g, std::move(fix)).values());
    } else {
      SurfaceField TAe = paradiff_apply(sym.A_sym[0], e.bottom());
      ComplexArray gb = -TAe.coeffs();
      ComplexArray zero = ComplexArray::Zero(g.num_modes());
      ComplexMatrix fix =
          flat_homogeneous(g, zero, BottomKind::Neumann, zero, true, &gb);
      e = StripField::from_values(
          g, e.values() + StripField::from_coeffs(g, std::move(fix)).values());
    }
    // Flat polish: the marches are blind to the psi-suppressed low modes and
    // to the stiff rows next to the boundaries; one exact flat defect pass
    // clears both while the marches carry the variable-coefficient part.
    StripField r2 = r - apply_operator(p.coeffs, e);
    r2.mutable_values().row(0).setZero();
    r2.mutable_values().row(g.Nz - 1).setZero();
    StripField polish = StripField::from_coeffs(
        g, flat_particular(g, p.bottom_kind, r2.coeffs()));
    return e + polish;
  });
}

}  // namespace ww
