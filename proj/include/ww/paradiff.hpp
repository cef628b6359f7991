#pragma once

#include "ww/littlewood_paley.hpp"
#include "ww/surface_field.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace ww {

// Symbol a(x,xi) of order m with limited x-smoothness, tabulated on the grid:
// table(p, m) = a(x_p, xi_m). Per-block x-smoothed tables (the zeta_{k-3}
// dilates of the admissible cutoff) are cached lazily.
class SymbolField {
 public:
  SymbolField() = default;
  SymbolField(const GridSpec& g, Real order, ComplexMatrix table);

  // a(x, xi) from a callable taking (x[], xi[]) with d entries each.
  static SymbolField from_function(
      const GridSpec& g, Real order,
      const std::function<Complex(const Real*, const Real*)>& f);

  // x-independent symbol a(xi).
  static SymbolField from_multiplier(const GridSpec& g, Real order,
                                     const std::function<Complex(const Real*)>& f);

  // x-only symbol a(x) (order 0).
  static SymbolField from_surface(const SurfaceField& b);

  const GridSpec& grid() const { return grid_; }
  Real order() const { return order_; }
  const ComplexMatrix& table() const { return *table_; }
  bool finite() const { return table_->allFinite(); }

  // Table smoothed in x with the dilated bump zeta_{k-3} (defined for all k).
  const ComplexMatrix& smoothed_table(int k) const;

  // Pointwise product of tables (symbol a#b at rho = 1).
  friend SymbolField symbol_product(const SymbolField& a, const SymbolField& b);
  friend SymbolField symbol_sum(const SymbolField& a, const SymbolField& b);
  SymbolField scaled(Complex s) const;

  // sqrt / other pointwise maps (principal branch).
  SymbolField map(Real new_order, const std::function<Complex(Complex)>& f) const;

 private:
  GridSpec grid_;
  Real order_ = 0;
  std::shared_ptr<const ComplexMatrix> table_;
  mutable std::shared_ptr<std::vector<std::shared_ptr<const ComplexMatrix>>> smoothed_;
};

struct SymbolSeminorm {
  Real m = 0;
  Real rho = 0;
  Real value = 0;
};

// --- operations -------------------------------------------------------------

// Bony paraproduct T_a u = sum_k S_{k-3} a Delta_k u (function symbol case).
SurfaceField paraproduct(const SurfaceField& a, const SurfaceField& u);

// R(u,a) = sum_{|k-l|<=2} Delta_k a Delta_l u.
SurfaceField bony_remainder(const SurfaceField& u, const SurfaceField& a);

// Paradifferential operator for (x,xi)-symbols: per-block Kohn-Nirenberg
// quadrature w += sum_xi (zeta_{k-3}-smoothed a)(x,xi) psi(xi) phi_k(xi)
// u_hat(xi) e^{i x.xi}. For x-independent symbols this reduces to a(D) psi(D).
SurfaceField paradiff_apply(const SymbolField& a, const SurfaceField& u);

// Discrete M^m_rho(a): sup over grid x and |xi| >= 1/2 of
// <xi>^{|alpha|-m} * ||d^alpha_xi a(.,xi)||_{W^{rho,inf}}, |alpha| <= 2.
SymbolSeminorm symbol_seminorm(const SymbolField& a, Real rho);

// (T_a T_b - T_{a#b}) u with rho = 1, i.e. a#b = ab.
SurfaceField composition_residual(const SymbolField& a, const SymbolField& b,
                                  const SurfaceField& u);

// [<D>^s, T_a] u.
SurfaceField commutator_ds(const SymbolField& a, const SurfaceField& u, Real s);

// Paraproduct against each component of a vector field: (T_zeta B)_i = T_{zeta_i} B.
SurfaceVector paraproduct(const SurfaceVector& zeta, const SurfaceField& B);

}  // namespace ww
