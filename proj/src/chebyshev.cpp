#include "ww/chebyshev.hpp"

#include <map>
#include <mutex>

namespace ww {

namespace {

ChebGrid build_cheb(int Nz) {
  const int M = Nz - 1;
  ChebGrid g;
  g.Nz = Nz;

  // Standard CGL nodes x_j = cos(j*pi/M) on [-1,1], mapped to [-1,0] and
  // reversed so the stored order is ascending in z.
  RealArray xstd(Nz);
  for (int j = 0; j <= M; ++j) xstd[j] = std::cos(kPi * j / M);

  // Differentiation matrix on the standard nodes (Trefethen), with the
  // negative-sum trick for the diagonal to tame roundoff.
  RealMatrix Dstd(Nz, Nz);
  RealArray c(Nz);
  for (int j = 0; j <= M; ++j) c[j] = (j == 0 || j == M) ? 2.0 : 1.0;
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j <= M; ++j) {
      if (i == j) continue;
      Real sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      Dstd(i, j) = (c[i] / c[j]) * sign / (xstd[i] - xstd[j]);
    }
  }
  for (int i = 0; i <= M; ++i) {
    Real s = 0;
    for (int j = 0; j <= M; ++j)
      if (j != i) s += Dstd(i, j);
    Dstd(i, i) = -s;
  }

  // Map z = (x-1)/2: d/dz = 2 d/dx. Reverse index r(j) = M-j for ascending z.
  g.z.resize(Nz);
  g.D.resize(Nz, Nz);
  for (int i = 0; i <= M; ++i) {
    g.z[i] = (xstd[M - i] - 1.0) / 2.0;
    for (int j = 0; j <= M; ++j) g.D(i, j) = 2.0 * Dstd(M - i, M - j);
  }
  g.z[0] = -1.0;
  g.z[M] = 0.0;
  if (M % 2 == 0) g.z[M / 2] = -0.5;
  g.D2 = g.D * g.D;

  // Clenshaw-Curtis weights on [-1,1] (exact for the cosine series), then
  // scaled by the interval map |dz/dx| = 1/2 and reversed.
  RealArray wstd = RealArray::Zero(Nz);
  for (int j = 0; j <= M; ++j) {
    Real theta = kPi * j / M;
    Real s = 1.0;
    for (int k = 1; k <= M / 2; ++k) {
      Real bk = (2 * k == M) ? 1.0 : 2.0;
      s -= bk * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    Real cj = (j == 0 || j == M) ? 1.0 : 2.0;
    wstd[j] = (cj / M) * s;
  }
  g.w.resize(Nz);
  for (int j = 0; j <= M; ++j) g.w[j] = 0.5 * wstd[M - j];

  g.w_trap = RealArray::Zero(Nz);
  for (int j = 0; j + 1 <= M; ++j) {
    Real h = g.z[j + 1] - g.z[j];
    g.w_trap[j] += 0.5 * h;
    g.w_trap[j + 1] += 0.5 * h;
  }
  return g;
}

std::map<int, ChebGrid>& registry() {
  static std::map<int, ChebGrid> r;
  return r;
}
std::mutex reg_mutex;

}  // namespace

const ChebGrid& cheb_grid(int Nz) {
  std::lock_guard<std::mutex> lock(reg_mutex);
  auto& r = registry();
  auto it = r.find(Nz);
  if (it == r.end()) it = r.emplace(Nz, build_cheb(Nz)).first;
  return it->second;
}

}  // namespace ww
