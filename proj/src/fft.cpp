#include "ww/fft.hpp"

#include <unsupported/Eigen/FFT>
#include <vector>

namespace ww {

namespace {

Eigen::FFT<Real>& engine() {
  thread_local Eigen::FFT<Real> fft;
  return fft;
}

// In-place complex transform along both axes of an N x N row-major flat array.
void fft2(ComplexArray& data, int N, bool inverse) {
  auto& fft = engine();
  std::vector<Complex> in(N), out(N);
  // rows (contiguous stride 1 within row i: index i*N + j)
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) in[j] = data[Index(i) * N + j];
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    for (int j = 0; j < N; ++j) data[Index(i) * N + j] = out[j];
  }
  // columns
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) in[i] = data[Index(i) * N + j];
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    for (int i = 0; i < N; ++i) data[Index(i) * N + j] = out[i];
  }
}

}  // namespace

void dft_forward_c(const GridSpec& g, const ComplexArray& values, ComplexArray& coeffs) {
  const Index n = g.num_points();
  if (values.size() != n) throw GridMismatch("dft_forward_c: size mismatch");
  coeffs = values;
  if (g.d == 1) {
    std::vector<Complex> in(coeffs.data(), coeffs.data() + n), out(n);
    engine().fwd(out, in);
    for (Index i = 0; i < n; ++i) coeffs[i] = out[i] / Real(n);
  } else {
    fft2(coeffs, g.N, false);
    coeffs /= Real(n);
  }
}

void dft_inverse_c(const GridSpec& g, const ComplexArray& coeffs, ComplexArray& values) {
  const Index n = g.num_points();
  if (coeffs.size() != n) throw GridMismatch("dft_inverse_c: size mismatch");
  values = coeffs;
  if (g.d == 1) {
    std::vector<Complex> in(values.data(), values.data() + n), out(n);
    engine().inv(out, in);  // Eigen inv applies 1/n; undo it below
    for (Index i = 0; i < n; ++i) values[i] = out[i] * Real(n);
  } else {
    fft2(values, g.N, true);  // 1/n per axis applied by Eigen -> total 1/n^2... undone:
    values *= Real(n);
  }
}

void dft_forward(const GridSpec& g, const RealArray& values, ComplexArray& coeffs) {
  ComplexArray tmp = values.cast<Complex>();
  dft_forward_c(g, tmp, coeffs);
}

void dft_inverse(const GridSpec& g, const ComplexArray& coeffs, RealArray& values) {
  ComplexArray tmp;
  dft_inverse_c(g, coeffs, tmp);
  values = tmp.real();
}

}  // namespace ww
