#pragma once

#include <vector>

// Banded LU with partial pivoting, enough for the tridiagonal (1D) and
// banded (2D, bandwidth nx+1) Newton systems solved here.
namespace relheat::linalg {

class BandMatrix {
 public:
  // n unknowns, kl = ku = bw sub/superdiagonals.
  BandMatrix(int n, int bw);

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  // Entry access; |i - j| must be <= bw.
  double& at(int i, int j);
  double get(int i, int j) const;
  void add(int i, int j, double v) { at(i, j) += v; }

  // In-place LU factorization with partial pivoting; throws SolverError on
  // a numerically singular pivot.
  void factor();
  // Solves A x = rhs (rhs overwritten); requires factor() first.
  void solve(std::vector<double>& rhs) const;

 private:
  int n_, bw_, stride_;
  bool factored_ = false;
  std::vector<double> a_;    // (3*bw+1) x n, LAPACK-style band storage
  std::vector<int> ipiv_;

  double& raw(int i, int j) { return a_[static_cast<std::size_t>(j) * stride_ + (2 * bw_ + i - j)]; }
  double raw(int i, int j) const { return a_[static_cast<std::size_t>(j) * stride_ + (2 * bw_ + i - j)]; }
};

}  // namespace relheat::linalg
