#pragma once

#include <optional>
#include <vector>

#include "relheat/check.hpp"
#include "relheat/grid.hpp"
#include "relheat/types.hpp"

// Solves the stationary problem (relativistically harmonic functions) with
// Dirichlet data in w = log u variables, plus a 1D shooting oracle.
namespace relheat::stationary {

struct StationaryProblem {
  grid::Grid grid;
  grid::BoundaryCondition bc;  // Dirichlet trace of w
  std::optional<grid::ScalarField> initial_guess;  // w variables
  double newton_tol = 1e-10;
  int newton_max_iter = 100;

  void validate() const;
};

struct ConvergenceLog {
  struct Entry {
    int iteration;
    double residual;
    double damping;
  };
  std::vector<Entry> entries;
};

// Damped Newton on the conservative residual div(face_flux(e^w)) = 0.
// Post: ||div F(e^w)||_inf <= newton_tol; the pointwise Q stencil on the
// result is then small at the discretization level, O(h^2).
grid::ScalarField solve_harmonic(const StationaryProblem& problem,
                                 const ModelParams& params,
                                 ConvergenceLog* log = nullptr);

// Discrete-harmonic (Laplace) interpolant of the boundary data; the default
// initial guess.
grid::ScalarField laplace_interpolant(const grid::Grid& g,
                                      const grid::BoundaryCondition& bc);

// 1D two-point oracle: integrates w'' = -(w')^2 (1 + c^-2 (w')^2) by the
// classical 4th-order one-step method, bisecting the initial slope to meet
// w(x_hi) = w_right within 1e-12. Returns the profile at the n_steps+1
// uniform nodes of [x_lo, x_hi].
std::vector<double> shoot_1d(double w_left, double w_right,
                             const ModelParams& params, long n_steps,
                             double x_lo = 0.0, double x_hi = 1.0);

// Linear interpolation into a shot profile (exact at nodes).
double sample_profile(const std::vector<double>& profile, double x_lo,
                      double x_hi, double x);

// Interior extrema must not exceed the boundary extrema (or the field is
// constant to 1e-12).
CheckResult verify_strong_max(const grid::ScalarField& w,
                              const grid::BoundaryCondition& bc);

// Boundary ordering implies interior ordering, up to 10 h^2 plus the
// residual slack. Vacuously passes when the boundary data are not ordered.
CheckResult verify_comparison_elliptic(const grid::ScalarField& w,
                                       const grid::BoundaryCondition& bc_w,
                                       const grid::ScalarField& w_prime,
                                       const grid::BoundaryCondition& bc_wp,
                                       double residual_tol);

}  // namespace relheat::stationary
