#include "relheat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "relheat/types.hpp"

namespace relheat::linalg {

BandMatrix::BandMatrix(int n, int bw)
    : n_(n), bw_(bw), stride_(3 * bw + 1), ipiv_(n, 0) {
  if (n < 1 || bw < 0 || bw >= n)
    throw std::invalid_argument("BandMatrix: bad dimensions");
  a_.assign(static_cast<std::size_t>(stride_) * n, 0.0);
}

double& BandMatrix::at(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || std::abs(i - j) > bw_)
    throw std::out_of_range("BandMatrix::at outside band");
  return raw(i, j);
}

double BandMatrix::get(int i, int j) const {
  if (std::abs(i - j) > 2 * bw_) return 0.0;
  return raw(i, j);
}

// Unblocked banded LU with partial pivoting; fill widens the upper band
// from bw to 2*bw, which the storage already accommodates.
void BandMatrix::factor() {
  const int kl = bw_;
  const int ku_eff = 2 * bw_;
  for (int j = 0; j < n_; ++j) {
    const int imax = std::min(n_ - 1, j + kl);
    int piv = j;
    double pmag = std::abs(raw(j, j));
    for (int i = j + 1; i <= imax; ++i) {
      const double m = std::abs(raw(i, j));
      if (m > pmag) {
        pmag = m;
        piv = i;
      }
    }
    ipiv_[j] = piv;
    if (pmag == 0.0)
      throw SolverError("BandMatrix: singular pivot", 0.0);
    const int cmax = std::min(n_ - 1, j + ku_eff);
    if (piv != j)
      for (int c = j; c <= cmax; ++c) std::swap(raw(j, c), raw(piv, c));
    const double inv = 1.0 / raw(j, j);
    for (int i = j + 1; i <= imax; ++i) {
      const double l = raw(i, j) * inv;
      raw(i, j) = l;
      if (l == 0.0) continue;
      for (int c = j + 1; c <= cmax; ++c) raw(i, c) -= l * raw(j, c);
    }
  }
  factored_ = true;
}

void BandMatrix::solve(std::vector<double>& rhs) const {
  if (!factored_) throw std::logic_error("BandMatrix::solve before factor");
  if (static_cast<int>(rhs.size()) != n_)
    throw std::invalid_argument("BandMatrix::solve rhs size mismatch");
  const int kl = bw_;
  const int ku_eff = 2 * bw_;
  for (int j = 0; j < n_; ++j) {
    if (ipiv_[j] != j) std::swap(rhs[j], rhs[ipiv_[j]]);
    const int imax = std::min(n_ - 1, j + kl);
    for (int i = j + 1; i <= imax; ++i) rhs[i] -= raw(i, j) * rhs[j];
  }
  for (int j = n_ - 1; j >= 0; --j) {
    rhs[j] /= raw(j, j);
    const int imin = std::max(0, j - ku_eff);
    for (int i = imin; i < j; ++i) rhs[i] -= raw(i, j) * rhs[j];
  }
}

}  // namespace relheat::linalg
