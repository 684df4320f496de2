#include "relheat/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jacobian.hpp"
#include "relheat/core.hpp"
#include "relheat/linalg.hpp"

namespace relheat::stationary {

namespace {

using grid::BoundaryCondition;
using grid::Grid;
using grid::ScalarField;

double tol_h2(const Grid& g) {
  const double h = g.dim == 2 ? std::max(g.h[0], g.h[1]) : g.h[0];
  return 10.0 * h * h;
}

BoundaryCondition exp_bc(const BoundaryCondition& bc) {
  BoundaryCondition out = bc;
  if (out.constant) {
    out.constant_value = std::exp(out.constant_value);
    return out;
  }
  for (auto* side : {&out.left, &out.right, &out.bottom, &out.top})
    for (double& v : *side) v = std::exp(v);
  return out;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

void StationaryProblem::validate() const {
  grid.validate();
  if (!bc.is_dirichlet())
    throw ConfigError("stationary problems require Dirichlet data");
  bc.validate(grid, /*positive_required=*/false);
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be > 0");
  if (newton_max_iter < 1) throw ConfigError("newton_max_iter must be >= 1");
  if (initial_guess) initial_guess->validate();
}

grid::ScalarField laplace_interpolant(const Grid& g,
                                      const BoundaryCondition& bc) {
  std::vector<double> rhs_bc;
  linalg::BandMatrix A = detail::laplacian_matrix(g, bc, &rhs_bc);
  A.factor();
  std::vector<double> w(rhs_bc);
  for (double& v : w) v = -v;
  A.solve(w);
  ScalarField out = ScalarField::zeros(g);
  out.values = std::move(w);
  return out;
}

grid::ScalarField solve_harmonic(const StationaryProblem& problem,
                                 const ModelParams& params,
                                 ConvergenceLog* log) {
  problem.validate();
  params.validate();
  const Grid& g = problem.grid;
  const std::size_t n = g.cell_count();
  const BoundaryCondition bc_u = exp_bc(problem.bc);

  ScalarField w = problem.initial_guess ? *problem.initial_guess
                                        : laplace_interpolant(g, problem.bc);
  if (!(w.grid == g))
    throw ConfigError("initial guess grid does not match the problem grid");

  auto residual = [&](const ScalarField& w_iter, ScalarField* u_out) {
    ScalarField u = grid::field_exp(w_iter);
    ScalarField r = grid::divergence(grid::face_flux(u, bc_u, params));
    if (u_out) *u_out = std::move(u);
    return r;
  };

  std::vector<double> history;
  ScalarField u_iter = ScalarField::zeros(g);
  ScalarField r = residual(w, &u_iter);
  double res = inf_norm(r.values);
  history.push_back(res);
  if (log) log->entries.push_back({0, res, 1.0});

  for (int iter = 1; iter <= problem.newton_max_iter; ++iter) {
    if (res <= problem.newton_tol) return w;

    const int bw = g.dim == 1 ? 1 : g.n[0] + 1;
    linalg::BandMatrix J(static_cast<int>(n), bw);
    detail::add_flux_divergence_jacobian(J, u_iter, bc_u, params,
                                         /*classical=*/false, 1.0);
    J.factor();
    std::vector<double> delta_u(n);
    for (std::size_t i = 0; i < n; ++i) delta_u[i] = -r.values[i];
    J.solve(delta_u);

    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving) {
      ScalarField w_try = w;
      bool in_range = true;
      for (std::size_t i = 0; i < n; ++i) {
        w_try.values[i] += alpha * delta_u[i] / u_iter.values[i];
        if (!(std::abs(w_try.values[i]) < 700.0)) in_range = false;
      }
      if (!in_range) {  // exp would overflow; treat as a rejected trial
        alpha *= 0.5;
        continue;
      }
      ScalarField u_try;
      ScalarField r_try = residual(w_try, &u_try);
      const double res_try = inf_norm(r_try.values);
      if (res_try <= (1.0 - 1e-4 * alpha) * res ||
          res_try <= problem.newton_tol) {
        w = std::move(w_try);
        u_iter = std::move(u_try);
        r = std::move(r_try);
        res = res_try;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    history.push_back(res);
    if (log) log->entries.push_back({iter, res, alpha});
    if (!accepted)
      throw SolverError("stationary solve: Newton line search stalled", res,
                        history);
  }
  if (res <= problem.newton_tol) return w;
  throw SolverError("stationary solve: Newton did not converge", res, history);
}

std::vector<double> shoot_1d(double w_left, double w_right,
                             const ModelParams& params, long n_steps,
                             double x_lo, double x_hi) {
  if (!std::isfinite(w_left) || !std::isfinite(w_right))
    throw std::invalid_argument("invalid state: non-finite input");
  if (n_steps < 2) throw std::invalid_argument("shoot_1d: n_steps too small");
  if (!(x_hi > x_lo)) throw std::invalid_argument("shoot_1d: bad interval");
  params.validate();
  const double inv_c2 = params.inv_c2();
  const double hx = (x_hi - x_lo) / n_steps;

  auto accel = [&](double v) { return -v * v * (1.0 + inv_c2 * v * v); };

  // Integrates the IVP with slope s; fills profile when requested. Returns
  // the endpoint value, or -inf once the solution dives out of range (a
  // steep negative slope blows down in finite x; endpoint is monotone
  // increasing in s, so this sorts correctly for bracketing).
  auto integrate = [&](double s, std::vector<double>* profile) {
    double w = w_left, v = s;
    if (profile) (*profile)[0] = w;
    for (long i = 0; i < n_steps; ++i) {
      const double k1w = v, k1v = accel(v);
      const double k2w = v + 0.5 * hx * k1v, k2v = accel(v + 0.5 * hx * k1v);
      const double k3w = v + 0.5 * hx * k2v, k3v = accel(v + 0.5 * hx * k2v);
      const double k4w = v + hx * k3v, k4v = accel(v + hx * k3v);
      w += hx / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
      v += hx / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      if (!std::isfinite(w) || !std::isfinite(v) || w < -1e12)
        return -std::numeric_limits<double>::infinity();
      if (profile) (*profile)[static_cast<std::size_t>(i) + 1] = w;
    }
    return w;
  };

  // Bracket the slope, then bisect; the endpoint map is strictly increasing.
  const double s0 = (w_right - w_left) / (x_hi - x_lo);
  double s_lo = s0, s_hi = s0, step = std::max(1.0, std::abs(s0));
  bool have_lo = false, have_hi = false;
  for (int k = 0; k < 80 && !(have_lo && have_hi); ++k) {
    if (!have_lo) {
      if (integrate(s_lo, nullptr) < w_right)
        have_lo = true;
      else
        s_lo -= step;
    }
    if (!have_hi) {
      if (integrate(s_hi, nullptr) > w_right)
        have_hi = true;
      else
        s_hi += step;
    }
    step *= 2.0;
  }
  if (!(have_lo && have_hi))
    throw SolverError("shooting: unable to bracket the boundary slope (tried [" +
                          std::to_string(s_lo) + ", " + std::to_string(s_hi) +
                          "])",
                      std::numeric_limits<double>::infinity());

  double end = 0.0, s_mid = s0;
  for (int it = 0; it < 200; ++it) {
    s_mid = 0.5 * (s_lo + s_hi);
    end = integrate(s_mid, nullptr);
    if (std::abs(end - w_right) <= 1e-12) break;
    if (end < w_right)
      s_lo = s_mid;
    else
      s_hi = s_mid;
  }
  if (std::abs(end - w_right) > 1e-12)
    throw SolverError("shooting: bisection did not meet the boundary value",
                      std::abs(end - w_right));

  std::vector<double> profile(static_cast<std::size_t>(n_steps) + 1);
  integrate(s_mid, &profile);
  return profile;
}

double sample_profile(const std::vector<double>& profile, double x_lo,
                      double x_hi, double x) {
  const std::size_t n = profile.size() - 1;
  const double hx = (x_hi - x_lo) / static_cast<double>(n);
  double pos = (x - x_lo) / hx;
  pos = std::clamp(pos, 0.0, static_cast<double>(n));
  const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
  const double frac = pos - static_cast<double>(i);
  return profile[i] * (1.0 - frac) + profile[i + 1] * frac;
}

CheckResult verify_strong_max(const grid::ScalarField& w,
                              const grid::BoundaryCondition& bc) {
  w.validate();
  const grid::Extrema e = grid::extrema(w);
  std::map<std::string, double> ctx{{"interior_min", e.min},
                                    {"interior_max", e.max}};
  if (e.max - e.min <= 1e-12) {
    ctx["constant"] = 1.0;
    return make_check("strong-max", 0.0, tol_h2(w.grid), std::move(ctx));
  }
  const double bd_max = bc.max_value(w.grid);
  const double bd_min = bc.min_value(w.grid);
  ctx["boundary_min"] = bd_min;
  ctx["boundary_max"] = bd_max;
  const double violation =
      std::max({0.0, e.max - bd_max, bd_min - e.min});
  return make_check("strong-max", violation, tol_h2(w.grid), std::move(ctx));
}

CheckResult verify_comparison_elliptic(const grid::ScalarField& w,
                                       const grid::BoundaryCondition& bc_w,
                                       const grid::ScalarField& w_prime,
                                       const grid::BoundaryCondition& bc_wp,
                                       double residual_tol) {
  w.validate();
  w_prime.validate();
  if (!(w.grid == w_prime.grid))
    throw std::invalid_argument("grids mismatch");
  const Grid& g = w.grid;

  bool ordered = true;
  const int ny = g.dim == 2 ? g.n[1] : 1;
  for (int iy = 0; iy < ny && ordered; ++iy)
    ordered = bc_w.value(grid::Side::Left, iy) <=
                  bc_wp.value(grid::Side::Left, iy) + 1e-14 &&
              bc_w.value(grid::Side::Right, iy) <=
                  bc_wp.value(grid::Side::Right, iy) + 1e-14;
  if (g.dim == 2)
    for (int ix = 0; ix < g.n[0] && ordered; ++ix)
      ordered = bc_w.value(grid::Side::Bottom, ix) <=
                    bc_wp.value(grid::Side::Bottom, ix) + 1e-14 &&
                bc_w.value(grid::Side::Top, ix) <=
                    bc_wp.value(grid::Side::Top, ix) + 1e-14;

  std::map<std::string, double> ctx;
  if (!ordered) {
    ctx["boundary_not_ordered"] = 1.0;
    return make_check("comparison-elliptic", 0.0,
                      tol_h2(g) + residual_tol, std::move(ctx));
  }
  double violation = 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i)
    violation = std::max(violation, w.values[i] - w_prime.values[i]);
  violation = std::max(violation, 0.0);
  ctx["max_gap"] = violation;
  return make_check("comparison-elliptic", violation,
                    tol_h2(g) + residual_tol, std::move(ctx));
}

}  // namespace relheat::stationary
