#include <random>
#include <vector>

#include <doctest.h>

#include "relheat/linalg.hpp"
#include "relheat/types.hpp"

using relheat::linalg::BandMatrix;

namespace {

// dense Gaussian elimination with partial pivoting; the independent
// reference for the banded solver
std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int j = 0; j < n; ++j) {
    int piv = j;
    for (int i = j + 1; i < n; ++i)
      if (std::abs(a[i][j]) > std::abs(a[piv][j])) piv = i;
    std::swap(a[j], a[piv]);
    std::swap(b[j], b[piv]);
    for (int i = j + 1; i < n; ++i) {
      const double l = a[i][j] / a[j][j];
      for (int k = j; k < n; ++k) a[i][k] -= l * a[j][k];
      b[i] -= l * b[j];
    }
  }
  for (int j = n - 1; j >= 0; --j) {
    for (int k = j + 1; k < n; ++k) b[j] -= a[j][k] * b[k];
    b[j] /= a[j][j];
  }
  return b;
}

}  // namespace

TEST_CASE("banded solve matches dense elimination on random systems") {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 5 + static_cast<int>(rng() % 36);
    const int bw = 1 + static_cast<int>(rng() % std::min(5, n - 1));
    BandMatrix m(n, bw);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j) {
        const double v = uni(rng) + (i == j ? 2.0 * bw + 1.0 : 0.0);
        m.at(i, j) = v;
        dense[i][j] = v;
      }
    }
    std::vector<double> rhs(n);
    for (double& v : rhs) v = uni(rng);

    const auto expect = dense_solve(dense, rhs);
    m.factor();
    std::vector<double> got = rhs;
    m.solve(got);
    for (int i = 0; i < n; ++i)
      CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-10));
  }
}

TEST_CASE("tridiagonal Poisson-style system") {
  // -u'' = 1 on (0,1), u(0)=u(1)=0, n interior nodes: u(x) = x(1-x)/2
  const int n = 63;
  const double h = 1.0 / (n + 1);
  BandMatrix m(n, 1);
  std::vector<double> rhs(n, 1.0);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = 2.0 / (h * h);
    if (i > 0) m.at(i, i - 1) = -1.0 / (h * h);
    if (i < n - 1) m.at(i, i + 1) = -1.0 / (h * h);
  }
  m.factor();
  m.solve(rhs);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 1) * h;
    CHECK(rhs[i] == doctest::Approx(0.5 * x * (1.0 - x)).epsilon(1e-10));
  }
}

TEST_CASE("pivoting handles zero diagonals; singular matrices throw") {
  {
    BandMatrix m(3, 1);
    m.at(0, 0) = 0.0;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    m.at(1, 1) = 0.0;
    m.at(1, 2) = 1.0;
    m.at(2, 1) = 1.0;
    m.at(2, 2) = 1.0;
    std::vector<double> rhs{1.0, 2.0, 3.0};
    m.factor();
    m.solve(rhs);
    // x solves: x1 = 1; x0 + x2 = 2; x1 + x2 = 3
    CHECK(rhs[1] == doctest::Approx(1.0));
    CHECK(rhs[2] == doctest::Approx(2.0));
    CHECK(rhs[0] == doctest::Approx(0.0));
  }
  {
    BandMatrix s(2, 1);
    s.at(0, 0) = 1.0;
    s.at(0, 1) = 2.0;
    // second row identically zero
    CHECK_THROWS_AS(s.factor(), relheat::SolverError);
  }
}

TEST_CASE("band access guards") {
  BandMatrix m(10, 2);
  CHECK_THROWS(m.at(0, 5));
  CHECK_THROWS(m.at(-1, 0));
  std::vector<double> wrong(3);
  m.at(0, 0) = 1.0;
  CHECK_THROWS(m.solve(wrong));
}
