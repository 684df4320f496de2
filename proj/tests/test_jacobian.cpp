// White-box check of the analytic flux-divergence Jacobian against central
// finite differences of the operator itself.

#include <cmath>
#include <random>

#include <doctest.h>

#include "jacobian.hpp"
#include "relheat/grid.hpp"

using namespace relheat;
using grid::BoundaryCondition;
using grid::Grid;
using grid::ScalarField;

namespace {

std::vector<double> divergence_of(const ScalarField& u,
                                  const BoundaryCondition& bc,
                                  const ModelParams& params, bool classical) {
  const auto fl = classical ? grid::classical_face_flux(u, bc)
                            : grid::face_flux(u, bc, params);
  return grid::divergence(fl).values;
}

// J v by central differences of the nonlinear operator
std::vector<double> fd_directional(const ScalarField& u,
                                   const BoundaryCondition& bc,
                                   const ModelParams& params, bool classical,
                                   const std::vector<double>& v, double eps) {
  ScalarField up = u, um = u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    up.values[i] += eps * v[i];
    um.values[i] -= eps * v[i];
  }
  const auto dp = divergence_of(up, bc, params, classical);
  const auto dm = divergence_of(um, bc, params, classical);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = (dp[i] - dm[i]) / (2.0 * eps);
  return out;
}

std::vector<double> band_matvec(const linalg::BandMatrix& m,
                                const std::vector<double>& v) {
  const int n = m.size();
  const int bw = m.bandwidth();
  std::vector<double> out(v.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j)
      out[i] += m.get(i, j) * v[j];
  return out;
}

void check_jacobian(const ScalarField& u, const BoundaryCondition& bc,
                    const ModelParams& params, bool classical) {
  const auto J = detail::flux_divergence_jacobian(u, bc, params, classical);
  std::mt19937_64 rng(1812);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<double> v(u.values.size());
    for (double& x : v) x = uni(rng);
    const auto analytic = band_matvec(J, v);
    const auto fd = fd_directional(u, bc, params, classical, v, 1e-6);
    double scale = 1.0;
    for (double x : analytic) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(std::abs(analytic[i] - fd[i]) <= 2e-5 * scale);
  }
}

}  // namespace

TEST_CASE("flux jacobian matches finite differences (1D)") {
  const Grid g = Grid::make_1d(24, 0.0, 1.0);
  const auto u = ScalarField::from_function(g, [](double x) {
    return 0.4 + 0.3 * std::sin(5.0 * x) + 0.2 * x;
  });
  ModelParams params;
  params.c = 1.3;
  check_jacobian(u, BoundaryCondition::no_flux(), params, false);
  check_jacobian(u, BoundaryCondition::dirichlet_1d(0.5, 0.7), params, false);
  check_jacobian(u, BoundaryCondition::dirichlet_1d(0.5, 0.7), params, true);
}

TEST_CASE("flux jacobian matches finite differences (2D)") {
  const Grid g = Grid::make_2d(8, 7, 0.0, 1.0, -1.0, 0.5);
  const auto u = ScalarField::from_function(g, [](double x, double y) {
    return 0.5 + 0.25 * std::sin(4.0 * x) * std::cos(3.0 * y) + 0.1 * x;
  });
  ModelParams params;
  check_jacobian(u, BoundaryCondition::no_flux(), params, false);
  check_jacobian(u, BoundaryCondition::dirichlet_constant(0.6), params, false);
  check_jacobian(u, BoundaryCondition::dirichlet_constant(0.6), params, true);
}

TEST_CASE("laplacian matrix reproduces the stencil including ghosts") {
  const Grid g = Grid::make_2d(6, 6, 0.0, 1.0, 0.0, 1.0);
  const auto bc = BoundaryCondition::dirichlet_constant(0.25);
  std::vector<double> rhs_bc;
  auto A = detail::laplacian_matrix(g, bc, &rhs_bc);
  const auto w = ScalarField::from_function(
      g, [](double x, double y) { return 0.3 * x - 0.2 * y * y + 0.1; });
  // reference: pad with ghosts and apply the 5-point stencil directly
  const auto p = grid::pad_with_ghosts(w, bc);
  const double ih2 = 1.0 / (g.h[0] * g.h[0]);
  const auto av = band_matvec(A, w.values);
  for (int iy = 0; iy < 6; ++iy) {
    for (int ix = 0; ix < 6; ++ix) {
      const double lap =
          (p.at(ix - 1, iy) - 2.0 * p.at(ix, iy) + p.at(ix + 1, iy)) * ih2 +
          (p.at(ix, iy - 1) - 2.0 * p.at(ix, iy) + p.at(ix, iy + 1)) * ih2;
      const std::size_t k = g.index(ix, iy);
      CHECK(av[k] + rhs_bc[k] == doctest::Approx(lap).epsilon(1e-11));
    }
  }
}
