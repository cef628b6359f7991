#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace ww {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

using RealArray = Eigen::ArrayXd;
using ComplexArray = Eigen::ArrayXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kTwoPi = 2.0 * kPi;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct DepthViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlatteningFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EllipticityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
  Real residual;
  int iterations;
  NoConvergence(const std::string& what, Real res, int iters)
      : std::runtime_error(what), residual(res), iterations(iters) {}
};

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// GridSpec: periodic horizontal grid [0,L)^d plus a vertical level count.
// The z-levels live on [-1,0] at Chebyshev-Gauss-Lobatto nodes; Nz odd keeps
// z = -1, -1/2, 0 on the grid.
// ---------------------------------------------------------------------------

struct GridSpec {
  int d = 1;                       // horizontal dimension (1 or 2)
  int N = 64;                      // points per horizontal axis (power of two)
  Real L = kTwoPi;                 // period length per axis
  int Nz = 33;                     // number of z-levels
  Real dealias_fraction = 2.0 / 3.0;

  void validate() const {
    if (d != 1 && d != 2) throw std::invalid_argument("GridSpec: d must be 1 or 2");
    if (N < 8 || (N & (N - 1)) != 0)
      throw std::invalid_argument("GridSpec: N must be a power of two >= 8");
    if (!(L > 0)) throw std::invalid_argument("GridSpec: L must be positive");
    if (Nz < 9 || Nz % 2 == 0)
      throw std::invalid_argument("GridSpec: Nz must be odd and >= 9");
    if (!(dealias_fraction > 0) || dealias_fraction > 1.0)
      throw std::invalid_argument("GridSpec: dealias_fraction must lie in (0,1]");
  }

  Index num_points() const { return d == 1 ? N : Index(N) * N; }
  Index num_modes() const { return num_points(); }

  Real dx() const { return L / N; }

  // Signed integer frequency of a per-axis index in [0,N).
  int signed_freq(int idx) const { return idx < N / 2 ? idx : idx - N; }

  // Per-axis index of a flat mode index.
  int axis_index(Index m, int axis) const {
    if (d == 1) return int(m);
    return axis == 0 ? int(m / N) : int(m % N);
  }

  // Wavenumber component xi_axis = (2*pi/L) * signed frequency.
  Real xi(Index m, int axis) const {
    return kTwoPi / L * signed_freq(axis_index(m, axis));
  }

  Real xi_abs2(Index m) const {
    Real s = 0;
    for (int a = 0; a < d; ++a) {
      Real x = xi(m, a);
      s += x * x;
    }
    return s;
  }

  Real xi_abs(Index m) const { return std::sqrt(xi_abs2(m)); }

  // Largest dealias-retained integer frequency per axis (Nyquist always dropped).
  int dealias_cut() const {
    int cut = int(std::floor(dealias_fraction * (N / 2)));
    return std::min(cut, N / 2 - 1);
  }

  bool retained(Index m) const {
    int cut = dealias_cut();
    for (int a = 0; a < d; ++a) {
      int f = signed_freq(axis_index(m, a));
      if (std::abs(f) > cut) return false;
    }
    return true;
  }

  // Physical coordinate of a flat point index along an axis.
  Real x(Index p, int axis) const { return dx() * axis_index(p, axis); }

  bool same_as(const GridSpec& o) const {
    return d == o.d && N == o.N && L == o.L && Nz == o.Nz &&
           dealias_fraction == o.dealias_fraction;
  }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!a.same_as(b)) throw GridMismatch(std::string(where) + ": grid mismatch");
}

}  // namespace ww
