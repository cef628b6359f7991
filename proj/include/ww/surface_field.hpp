#pragma once

#include "ww/core.hpp"
#include "ww/fft.hpp"

#include <optional>
#include <vector>

namespace ww {

// Real periodic scalar field on the horizontal torus with lazily synchronized
// physical samples and spectral coefficients. Coefficients of a real field are
// Hermitian-symmetric; constructing from coefficients re-projects onto real
// fields (imaginary residue is dropped after the inverse transform).
template <typename Scalar>
class SurfaceFieldT {
 public:
  using ValueArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using CoeffArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

  SurfaceFieldT() = default;

  explicit SurfaceFieldT(const GridSpec& g)
      : grid_(g), values_(ValueArray::Zero(g.num_points())), has_values_(true) {}

  static SurfaceFieldT from_values(const GridSpec& g, ValueArray v) {
    if (v.size() != g.num_points())
      throw GridMismatch("SurfaceField::from_values: size mismatch");
    SurfaceFieldT f;
    f.grid_ = g;
    f.values_ = std::move(v);
    f.has_values_ = true;
    return f;
  }

  static SurfaceFieldT from_coeffs(const GridSpec& g, CoeffArray c) {
    if (c.size() != g.num_modes())
      throw GridMismatch("SurfaceField::from_coeffs: size mismatch");
    SurfaceFieldT f;
    f.grid_ = g;
    f.coeffs_ = std::move(c);
    f.has_coeffs_ = true;
    return f;
  }

  const GridSpec& grid() const { return grid_; }

  const ValueArray& values() const {
    sync_values();
    return values_;
  }

  const CoeffArray& coeffs() const {
    sync_coeffs();
    return coeffs_;
  }

  // Mutable access invalidates the other representation.
  ValueArray& mutable_values() {
    sync_values();
    has_coeffs_ = false;
    return values_;
  }

  CoeffArray& mutable_coeffs() {
    sync_coeffs();
    has_values_ = false;
    return coeffs_;
  }

  bool finite() const { return values().isFinite().all(); }

  Scalar max_abs() const { return values().abs().maxCoeff(); }

 private:
  void sync_values() const {
    if (has_values_) return;
    if (!has_coeffs_) throw std::logic_error("SurfaceField: empty field");
    dft_inverse(grid_, coeffs_, values_);
    has_values_ = true;
  }
  void sync_coeffs() const {
    if (has_coeffs_) return;
    if (!has_values_) throw std::logic_error("SurfaceField: empty field");
    dft_forward(grid_, values_, coeffs_);
    has_coeffs_ = true;
  }

  GridSpec grid_;
  mutable ValueArray values_;
  mutable CoeffArray coeffs_;
  mutable bool has_values_ = false;
  mutable bool has_coeffs_ = false;
};

using SurfaceField = SurfaceFieldT<Real>;
using SurfaceVector = std::vector<SurfaceField>;  // d horizontal components

// --- arithmetic (free functions; fields combine in whichever representation
// is already synchronized on the left operand's terms) ----------------------

inline SurfaceField operator+(const SurfaceField& a, const SurfaceField& b) {
  require_same_grid(a.grid(), b.grid(), "SurfaceField+");
  return SurfaceField::from_values(a.grid(), a.values() + b.values());
}

inline SurfaceField operator-(const SurfaceField& a, const SurfaceField& b) {
  require_same_grid(a.grid(), b.grid(), "SurfaceField-");
  return SurfaceField::from_values(a.grid(), a.values() - b.values());
}

inline SurfaceField operator*(Real s, const SurfaceField& a) {
  return SurfaceField::from_values(a.grid(), s * a.values());
}

inline SurfaceField operator*(const SurfaceField& a, const SurfaceField& b) {
  require_same_grid(a.grid(), b.grid(), "SurfaceField*");
  return SurfaceField::from_values(a.grid(), a.values() * b.values());
}

}  // namespace ww
