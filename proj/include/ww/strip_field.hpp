#pragma once

#include "ww/chebyshev.hpp"
#include "ww/core.hpp"
#include "ww/fft.hpp"
#include "ww/surface_field.hpp"

#include <vector>

namespace ww {

// Real field on torus x [-1,0]: spectral in x, gridded in z (CGL levels,
// ascending; row j of either matrix is level z_j). Physical values and
// per-level spectral coefficients are kept lazily synchronized.
template <typename Scalar>
class StripFieldT {
 public:
  using ValueMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using CoeffMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  using SurfaceT = SurfaceFieldT<Scalar>;

  StripFieldT() = default;

  explicit StripFieldT(const GridSpec& g)
      : grid_(g),
        values_(ValueMatrix::Zero(g.Nz, g.num_points())),
        has_values_(true) {}

  static StripFieldT from_values(const GridSpec& g, ValueMatrix v) {
    if (v.rows() != g.Nz || v.cols() != g.num_points())
      throw GridMismatch("StripField::from_values: size mismatch");
    StripFieldT f;
    f.grid_ = g;
    f.values_ = std::move(v);
    f.has_values_ = true;
    return f;
  }

  static StripFieldT from_coeffs(const GridSpec& g, CoeffMatrix c) {
    if (c.rows() != g.Nz || c.cols() != g.num_modes())
      throw GridMismatch("StripField::from_coeffs: size mismatch");
    StripFieldT f;
    f.grid_ = g;
    f.coeffs_ = std::move(c);
    f.has_coeffs_ = true;
    return f;
  }

  const GridSpec& grid() const { return grid_; }
  const ChebGrid& zgrid() const { return cheb_grid(grid_.Nz); }

  const ValueMatrix& values() const {
    sync_values();
    return values_;
  }
  const CoeffMatrix& coeffs() const {
    sync_coeffs();
    return coeffs_;
  }
  ValueMatrix& mutable_values() {
    sync_values();
    has_coeffs_ = false;
    return values_;
  }
  CoeffMatrix& mutable_coeffs() {
    sync_coeffs();
    has_values_ = false;
    return coeffs_;
  }

  SurfaceT level(int j) const {
    sync_values();
    typename SurfaceT::ValueArray row = values_.row(j).transpose().array();
    return SurfaceT::from_values(grid_, std::move(row));
  }
  SurfaceT top() const { return level(grid_.Nz - 1); }
  SurfaceT bottom() const { return level(0); }

  void set_level(int j, const SurfaceT& f) {
    sync_values();
    has_coeffs_ = false;
    values_.row(j) = f.values().matrix().transpose();
  }

  bool finite() const { return values().allFinite(); }
  Scalar max_abs() const { return values().array().abs().maxCoeff(); }

 private:
  void sync_values() const {
    if (has_values_) return;
    if (!has_coeffs_) throw std::logic_error("StripField: empty field");
    values_.resize(coeffs_.rows(), coeffs_.cols());
    RealArray buf;
    ComplexArray crow(coeffs_.cols());
    for (Index j = 0; j < coeffs_.rows(); ++j) {
      crow = coeffs_.row(j).transpose().array();
      dft_inverse(grid_, crow, buf);
      values_.row(j) = buf.matrix().transpose();
    }
    has_values_ = true;
  }
  void sync_coeffs() const {
    if (has_coeffs_) return;
    if (!has_values_) throw std::logic_error("StripField: empty field");
    coeffs_.resize(values_.rows(), values_.cols());
    ComplexArray buf;
    RealArray vrow(values_.cols());
    for (Index j = 0; j < values_.rows(); ++j) {
      vrow = values_.row(j).transpose().array();
      dft_forward(grid_, vrow, buf);
      coeffs_.row(j) = buf.matrix().transpose();
    }
    has_coeffs_ = true;
  }

  GridSpec grid_;
  mutable ValueMatrix values_;
  mutable CoeffMatrix coeffs_;
  mutable bool has_values_ = false;
  mutable bool has_coeffs_ = false;
};

using StripField = StripFieldT<Real>;
using StripVector = std::vector<StripField>;

inline StripField operator+(const StripField& a, const StripField& b) {
  require_same_grid(a.grid(), b.grid(), "StripField+");
  return StripField::from_values(a.grid(), a.values() + b.values());
}
inline StripField operator-(const StripField& a, const StripField& b) {
  require_same_grid(a.grid(), b.grid(), "StripField-");
  return StripField::from_values(a.grid(), a.values() - b.values());
}
inline StripField operator*(Real s, const StripField& a) {
  return StripField::from_values(a.grid(), s * a.values());
}
inline StripField pointwise(const StripField& a, const StripField& b) {
  require_same_grid(a.grid(), b.grid(), "StripField pointwise");
  return StripField::from_values(a.grid(), a.values().cwiseProduct(b.values()));
}

// d/dz on nodal values via the Chebyshev differentiation matrix.
inline StripField dz(const StripField& f) {
  return StripField::from_values(f.grid(), f.zgrid().D * f.values());
}

// L2 norm over the flat strip (unit Jacobian): x by exact trig quadrature,
// z by Clenshaw-Curtis.
inline Real strip_l2(const StripField& f) {
  const GridSpec& g = f.grid();
  Real hx = std::pow(g.dx(), g.d);
  RealArray per_level = f.values().array().square().rowwise().sum();
  return std::sqrt(std::max<Real>(0, hx * (f.zgrid().w * per_level).sum()));
}

}  // namespace ww
