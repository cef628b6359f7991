#include "ww/paradiff.hpp"

#include "ww/fft.hpp"
#include "ww/spectral_ops.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace ww {

// ---------------------------------------------------------------------------
// SymbolField
// ---------------------------------------------------------------------------

SymbolField::SymbolField(const GridSpec& g, Real order, ComplexMatrix table)
    : grid_(g), order_(order) {
  if (table.rows() != g.num_points() || table.cols() != g.num_modes())
    throw GridMismatch("SymbolField: table size mismatch");
  table_ = std::make_shared<const ComplexMatrix>(std::move(table));
  smoothed_ = std::make_shared<std::vector<std::shared_ptr<const ComplexMatrix>>>();
}

SymbolField SymbolField::from_function(
    const GridSpec& g, Real order,
    const std::function<Complex(const Real*, const Real*)>& f) {
  ComplexMatrix t(g.num_points(), g.num_modes());
  Real xv[2], xiv[2];
  for (Index p = 0; p < g.num_points(); ++p) {
    for (int a = 0; a < g.d; ++a) xv[a] = g.x(p, a);
    for (Index m = 0; m < g.num_modes(); ++m) {
      for (int a = 0; a < g.d; ++a) xiv[a] = g.xi(m, a);
      t(p, m) = f(xv, xiv);
    }
  }
  return SymbolField(g, order, std::move(t));
}

SymbolField SymbolField::from_multiplier(const GridSpec& g, Real order,
                                         const std::function<Complex(const Real*)>& f) {
  return from_function(g, order, [&](const Real*, const Real* xi) { return f(xi); });
}

SymbolField SymbolField::from_surface(const SurfaceField& b) {
  const GridSpec& g = b.grid();
  ComplexMatrix t(g.num_points(), g.num_modes());
  for (Index m = 0; m < g.num_modes(); ++m)
    t.col(m) = b.values().cast<Complex>().matrix();
  return SymbolField(g, 0.0, std::move(t));
}

const ComplexMatrix& SymbolField::smoothed_table(int k) const {
  if (k < 0) throw std::invalid_argument("SymbolField::smoothed_table: k < 0");
  const LPTables& lt = lp_tables(grid_);
  size_t idx = size_t(k);
  if (smoothed_->size() < size_t(lt.k_max) + 1) smoothed_->resize(lt.k_max + 1);
  if (idx >= smoothed_->size()) smoothed_->resize(idx + 1);
  auto& slot = (*smoothed_)[idx];
  if (slot) return *slot;

  // Smooth each mode-column in x with the dilated bump zeta_{k-3}(theta).
  auto out = std::make_shared<ComplexMatrix>(table_->rows(), table_->cols());
  ComplexArray col(grid_.num_points()), chat;
  for (Index m = 0; m < table_->cols(); ++m) {
    col = table_->col(m).array();
    dft_forward_c(grid_, col, chat);
    for (Index p = 0; p < chat.size(); ++p)
      chat[p] *= zeta_cut_k(k - 3, grid_.xi_abs(p));
    dft_inverse_c(grid_, chat, col);
    out->col(m) = col.matrix();
  }
  slot = out;
  return *slot;
}

SymbolField symbol_product(const SymbolField& a, const SymbolField& b) {
  require_same_grid(a.grid_, b.grid_, "symbol_product");
  return SymbolField(a.grid_, a.order_ + b.order_,
                     a.table_->cwiseProduct(*b.table_));
}

SymbolField symbol_sum(const SymbolField& a, const SymbolField& b) {
  require_same_grid(a.grid_, b.grid_, "symbol_sum");
  return SymbolField(a.grid_, std::max(a.order_, b.order_), *a.table_ + *b.table_);
}

SymbolField SymbolField::scaled(Complex s) const {
  return SymbolField(grid_, order_, s * (*table_));
}

SymbolField SymbolField::map(Real new_order,
                             const std::function<Complex(Complex)>& f) const {
  ComplexMatrix t = *table_;
  for (Index j = 0; j < t.size(); ++j) t.data()[j] = f(t.data()[j]);
  return SymbolField(grid_, new_order, std::move(t));
}

// ---------------------------------------------------------------------------
// Paraproduct and Bony remainder (function symbols)
// ---------------------------------------------------------------------------

SurfaceField paraproduct(const SurfaceField& a, const SurfaceField& u) {
  require_same_grid(a.grid(), u.grid(), "paraproduct");
  const GridSpec& g = a.grid();
  const LPTables& t = lp_tables(g);
  RealArray acc = RealArray::Zero(g.num_points());
  for (int k = 3; k <= t.k_max; ++k) {
    SurfaceField Sa = low_pass(a, k - 3);
    SurfaceField Du = dyadic_block(u, k);
    acc += Sa.values() * Du.values();
  }
  return SurfaceField::from_values(g, std::move(acc));
}

SurfaceField bony_remainder(const SurfaceField& u, const SurfaceField& a) {
  require_same_grid(a.grid(), u.grid(), "bony_remainder");
  const GridSpec& g = u.grid();
  const LPTables& t = lp_tables(g);
  std::vector<SurfaceField> du, da;
  du.reserve(t.k_max + 1);
  da.reserve(t.k_max + 1);
  for (int k = 0; k <= t.k_max; ++k) {
    du.push_back(dyadic_block(u, k));
    da.push_back(dyadic_block(a, k));
  }
  RealArray acc = RealArray::Zero(g.num_points());
  for (int k = 0; k <= t.k_max; ++k)
    for (int l = std::max(0, k - 2); l <= std::min(t.k_max, k + 2); ++l)
      acc += da[size_t(k)].values() * du[size_t(l)].values();
  return SurfaceField::from_values(g, std::move(acc));
}

SurfaceVector paraproduct(const SurfaceVector& zeta, const SurfaceField& B) {
  SurfaceVector out;
  out.reserve(zeta.size());
  for (const SurfaceField& z : zeta) out.push_back(paraproduct(z, B));
  return out;
}

// ---------------------------------------------------------------------------
// Paradifferential operator (x,xi symbols)
// ---------------------------------------------------------------------------

namespace {

// Cached synthesis matrix E(p, m) = e^{i x_p . xi_m} for small grids.
std::map<std::tuple<int, int>, std::shared_ptr<const ComplexMatrix>> synth_registry;
std::mutex synth_mutex;

void synthesis_column(const GridSpec& g, Index m, Eigen::VectorXcd& col) {
  const Index n = g.num_points();
  col.resize(n);
  if (g.d == 1) {
    for (Index p = 0; p < n; ++p)
      col[p] = std::polar(1.0, kTwoPi * Real((p * m) % g.N) / g.N);
  } else {
    Index mx = m / g.N, my = m % g.N;
    for (Index p = 0; p < n; ++p) {
      Index px = p / g.N, py = p % g.N;
      col[p] = std::polar(1.0, kTwoPi * Real((px * mx + py * my) % g.N) / g.N);
    }
  }
}

std::shared_ptr<const ComplexMatrix> synthesis_matrix(const GridSpec& g) {
  const Index n = g.num_points();
  if (n > 2048) return nullptr;  // too large to cache; columns built on the fly
  std::lock_guard<std::mutex> lock(synth_mutex);
  auto key = std::make_tuple(g.d, g.N);
  auto it = synth_registry.find(key);
  if (it != synth_registry.end()) return it->second;
  auto E = std::make_shared<ComplexMatrix>(n, n);
  Eigen::VectorXcd col;
  for (Index m = 0; m < n; ++m) {
    synthesis_column(g, m, col);
    E->col(m) = col;
  }
  synth_registry.emplace(key, E);
  return E;
}

}  // namespace

SurfaceField paradiff_apply(const SymbolField& a, const SurfaceField& u) {
  require_same_grid(a.grid(), u.grid(), "paradiff_apply");
  if (!a.finite()) throw std::invalid_argument("paradiff_apply: non-finite symbol");
  const GridSpec& g = u.grid();
  const LPTables& t = lp_tables(g);
  auto E = synthesis_matrix(g);
  const ComplexArray& uhat = u.coeffs();

  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(g.num_points());
  Eigen::VectorXcd scratch;
  for (int k = 0; k <= t.k_max; ++k) {
    const RealArray& phik = t.phi[size_t(k)];
    const ComplexMatrix* Sa = nullptr;  // built on first active mode
    for (Index m = 0; m < g.num_modes(); ++m) {
      Real w = phik[m] * t.psi[m];
      if (w == 0.0) continue;
      Complex amp = w * uhat[m];
      if (amp == Complex(0, 0)) continue;
      if (!Sa) Sa = &a.smoothed_table(k);
      if (E) {
        acc += amp * Sa->col(m).cwiseProduct(E->col(m));
      } else {
        synthesis_column(g, m, scratch);
        acc += amp * Sa->col(m).cwiseProduct(scratch);
      }
    }
  }
  // Admissible symbols are Hermitian in xi, so the result of acting on a real
  // field is real up to roundoff; the imaginary residue is dropped.
  return SurfaceField::from_values(g, acc.real().array());
}

// ---------------------------------------------------------------------------
// Symbol seminorm
// ---------------------------------------------------------------------------

namespace {

// Discrete W^{rho,inf} norm of a complex grid function (spectral derivatives
// for the integer part; Hoelder quotient over small grid offsets for the
// fractional part).
Real w_rho_inf(const GridSpec& g, const ComplexArray& b, Real rho) {
  int ki = int(std::floor(rho));
  Real mu = rho - ki;
  // value and derivative sups
  SurfaceField re = SurfaceField::from_values(g, b.real());
  SurfaceField im = SurfaceField::from_values(g, b.imag());
  auto sup_of = [&](const SurfaceField& fr, const SurfaceField& fi) {
    return std::sqrt((fr.values().square() + fi.values().square()).maxCoeff());
  };
  Real best = sup_of(re, im);
  std::vector<std::pair<SurfaceField, SurfaceField>> layer{{re, im}};
  for (int l = 1; l <= ki; ++l) {
    std::vector<std::pair<SurfaceField, SurfaceField>> next;
    for (auto& fp : layer)
      for (int ax = 0; ax < g.d; ++ax)
        next.emplace_back(deriv(fp.first, ax), deriv(fp.second, ax));
    layer = std::move(next);
    for (auto& fp : layer) best = std::max(best, sup_of(fp.first, fp.second));
  }
  if (mu > 0) {
    // Hoelder seminorm of the ki-th derivatives over shifts of up to 8 cells.
    Real holder = 0;
    for (auto& fp : layer) {
      const RealArray vr = fp.first.values(), vi = fp.second.values();
      for (int shift = 1; shift <= std::min(8, g.N - 1); ++shift) {
        Real h = shift * g.dx();
        Real denom = std::pow(h, mu);
        for (int ax = 0; ax < g.d; ++ax) {
          Real diff = 0;
          for (Index p = 0; p < g.num_points(); ++p) {
            Index q;
            if (g.d == 1) {
              q = (p + shift) % g.N;
            } else {
              int px = int(p / g.N), py = int(p % g.N);
              q = ax == 0 ? Index((px + shift) % g.N) * g.N + py
                          : Index(px) * g.N + (py + shift) % g.N;
            }
            Real dr = vr[q] - vr[p], di = vi[q] - vi[p];
            diff = std::max(diff, std::sqrt(dr * dr + di * di));
          }
          holder = std::max(holder, diff / denom);
        }
      }
    }
    best = std::max(best, holder);
  }
  return best;
}

}  // namespace

SymbolSeminorm symbol_seminorm(const SymbolField& a, Real rho) {
  if (rho < 0 || rho > 2)
    throw std::invalid_argument("symbol_seminorm: rho must lie in [0,2]");
  const GridSpec& g = a.grid();
  const ComplexMatrix& T = a.table();
  const Real m = a.order();

  // xi-derivatives by central differences on the mode lattice, up to order 2
  // (mixed first derivatives included for d = 2).
  Real dxi = kTwoPi / g.L;
  auto mode_of = [&](Index mm, int da0, int da1) -> Index {
    int i0 = g.axis_index(mm, 0);
    if (g.d == 1) {
      int f = g.signed_freq(i0) + da0;
      if (f < -g.N / 2 || f >= g.N / 2) return -1;
      return Index((f + g.N) % g.N);
    }
    int i1 = g.axis_index(mm, 1);
    int f0 = g.signed_freq(i0) + da0;
    int f1 = g.signed_freq(i1) + da1;
    if (f0 < -g.N / 2 || f0 >= g.N / 2 || f1 < -g.N / 2 || f1 >= g.N / 2) return -1;
    return Index((f0 + g.N) % g.N) * g.N + (f1 + g.N) % g.N;
  };

  struct Stencil {
    int order;
    std::vector<std::tuple<int, int, Real>> taps;  // (da0, da1, weight)
  };
  std::vector<Stencil> stencils;
  stencils.push_back({0, {{0, 0, 1.0}}});
  stencils.push_back({1, {{1, 0, 0.5}, {-1, 0, -0.5}}});
  stencils.push_back({2, {{1, 0, 1.0}, {0, 0, -2.0}, {-1, 0, 1.0}}});
  if (g.d == 2) {
    stencils.push_back({1, {{0, 1, 0.5}, {0, -1, -0.5}}});
    stencils.push_back({2, {{0, 1, 1.0}, {0, 0, -2.0}, {0, -1, 1.0}}});
    stencils.push_back(
        {2, {{1, 1, 0.25}, {-1, -1, 0.25}, {1, -1, -0.25}, {-1, 1, -0.25}}});
  }

  Real best = 0;
  ComplexArray col(g.num_points());
  for (const Stencil& st : stencils) {
    Real scale = std::pow(dxi, -st.order);
    for (Index mm = 0; mm < g.num_modes(); ++mm) {
      if (g.xi_abs(mm) < 0.5) continue;
      bool ok = true;
      col.setZero();
      for (auto& [d0, d1, wgt] : st.taps) {
        Index q = mode_of(mm, d0, d1);
        if (q < 0) {
          ok = false;
          break;
        }
        col += wgt * T.col(q).array();
      }
      if (!ok) continue;
      col *= scale;
      Real wnorm = w_rho_inf(g, col, rho);
      Real weight = std::pow(1.0 + g.xi_abs(mm), Real(st.order) - m);
      best = std::max(best, weight * wnorm);
    }
  }
  SymbolSeminorm out;
  out.m = m;
  out.rho = rho;
  out.value = best;
  return out;
}

// ---------------------------------------------------------------------------
// Composition residual and commutator
// ---------------------------------------------------------------------------

SurfaceField composition_residual(const SymbolField& a, const SymbolField& b,
                                  const SurfaceField& u) {
  SurfaceField Tbu = paradiff_apply(b, u);
  SurfaceField TaTbu = paradiff_apply(a, Tbu);
  SurfaceField Tabu = paradiff_apply(symbol_product(a, b), u);
  return TaTbu - Tabu;
}

SurfaceField commutator_ds(const SymbolField& a, const SurfaceField& u, Real s) {
  SurfaceField lhs = bessel_power(paradiff_apply(a, u), s);
  SurfaceField rhs = paradiff_apply(a, bessel_power(u, s));
  return lhs - rhs;
}

}  // namespace ww
