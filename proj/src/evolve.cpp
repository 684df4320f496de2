#include "relheat/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "jacobian.hpp"
#include "relheat/kernels.hpp"
#include "relheat/linalg.hpp"

namespace relheat::evolve {

namespace {

using grid::BoundaryCondition;
using grid::Grid;
using grid::ScalarField;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double front_position(const ScalarField& u, double threshold, bool absolute) {
  const Grid& g = u.grid;
  if (g.dim != 1) return kNan;
  for (int i = g.n[0] - 1; i >= 0; --i) {
    const double v = absolute ? std::abs(u.values[i]) : u.values[i];
    if (v > threshold) return g.center(0, i);
  }
  return kNan;
}

void record(RunReport& r, double t, const ScalarField& u, bool absolute_front) {
  r.times.push_back(t);
  r.mass_series.push_back(grid::mass(u));
  r.entropy_series.push_back(grid::entropy_or_nan(u));
  const grid::Extrema e = grid::extrema(u);
  r.max_series.push_back(e.max);
  r.min_series.push_back(e.min);
  r.front_position_series.push_back(
      front_position(u, r.front_threshold, absolute_front));
}

// Clip roundoff negatives to zero; anything beyond the budget means the
// step was unstable.
void clip_negatives(ScalarField& u, long* clip_count) {
  for (double& v : u.values) {
    if (!std::isfinite(v)) throw std::runtime_error("blow-up: dt too large");
    if (v < 0.0) {
      if (v < -1e-13) throw std::runtime_error("blow-up: dt too large");
      v = 0.0;
      if (clip_count) ++(*clip_count);
    }
  }
}

double stable_dt_for(EquationTag tag, const Grid& g, const ModelParams& params,
                     const TimeStepConfig& config) {
  const double h = g.min_h();
  const double parabolic = config.cfl_parabolic * h * h / g.dim;
  switch (tag) {
    case EquationTag::Relativistic:
      return std::min(parabolic, config.cfl_hyperbolic * h / params.c);
    case EquationTag::ClassicalHeat:
      return parabolic;
    case EquationTag::Telegraph:
      return config.cfl_hyperbolic * h / (params.c * std::sqrt(double(g.dim)));
  }
  throw std::logic_error("unreachable");
}

using StepFn = std::function<ScalarField(const ScalarField&, double)>;

// The nominal step is rounded down so an integer number of steps lands on
// t_end exactly; every step then has the same dt (the telegraph three-level
// scheme needs this, and Richardson-style dt studies stay clean).
RunReport run_loop(EquationTag tag, const ScalarField& initial,
                   const ModelParams& params, const TimeStepConfig& config,
                   double dt_nominal, const StepFn& step) {
  const long n_steps = std::max(
      1L, static_cast<long>(std::ceil(config.t_end / dt_nominal * (1.0 - 1e-12))));
  const double dt = config.t_end / n_steps;

  RunReport report;
  report.equation_tag = tag;
  report.params = params;
  report.grid = initial.grid;
  report.dt = dt;
  report.front_threshold = config.front_threshold;
  const bool absolute_front = tag == EquationTag::Telegraph;

  std::vector<double> targets = config.snapshot_times;
  for (double& s : targets) {
    if (!(s >= 0.0 && s <= config.t_end * (1.0 + 1e-12)))
      throw ConfigError("snapshot_times must lie in [0, t_end]");
    s = std::min(s, config.t_end);
  }
  targets.push_back(config.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                targets.end());

  const std::size_t expected = static_cast<std::size_t>(n_steps) + 1;
  report.times.reserve(expected);
  report.mass_series.reserve(expected);
  report.entropy_series.reserve(expected);
  report.max_series.reserve(expected);
  report.min_series.reserve(expected);
  report.front_position_series.reserve(expected);

  ScalarField u = initial;
  double t = 0.0;
  record(report, t, u, absolute_front);

  std::size_t next_target = 0;
  while (next_target < targets.size() && targets[next_target] <= 0.0) {
    report.snapshots.emplace_back(0.0, u);
    ++next_target;
  }

  for (long s = 1; s <= n_steps; ++s) {
    ScalarField u_new = step(u, dt);
    const double t_new = s == n_steps ? config.t_end : s * dt;
    record(report, t_new, u_new, absolute_front);
    while (next_target < targets.size() &&
           targets[next_target] <= t_new + 1e-14) {
      const double st = targets[next_target];
      if (std::abs(t - st) < std::abs(t_new - st))
        report.snapshots.emplace_back(t, u);
      else
        report.snapshots.emplace_back(t_new, u_new);
      ++next_target;
    }
    u = std::move(u_new);
    t = t_new;
  }
  // t_end is always among the targets, so the final state is recorded.
  return report;
}

}  // namespace

const char* to_string(EquationTag tag) {
  switch (tag) {
    case EquationTag::Relativistic: return "relativistic";
    case EquationTag::ClassicalHeat: return "classical-heat";
    case EquationTag::Telegraph: return "telegraph";
  }
  return "?";
}

void TimeStepConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw ConfigError("t_end must be > 0");
  if (!(cfl_parabolic > 0.0 && cfl_parabolic <= 0.5))
    throw ConfigError("cfl_parabolic must lie in (0, 0.5]");
  if (!(cfl_hyperbolic > 0.0 && cfl_hyperbolic <= 1.0))
    throw ConfigError("cfl_hyperbolic must lie in (0, 1]");
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be > 0");
  if (newton_max_iter < 1) throw ConfigError("newton_max_iter must be >= 1");
  if (dt_override < 0.0 || !std::isfinite(dt_override))
    throw ConfigError("dt_override must be >= 0");
  if (!(front_threshold > 0.0))
    throw ConfigError("front_threshold must be > 0");
}

double stable_dt(const grid::ScalarField& field, const ModelParams& params,
                 const TimeStepConfig& config) {
  params.validate();
  config.validate();
  return stable_dt_for(EquationTag::Relativistic, field.grid, params, config);
}

grid::ScalarField step_explicit(const grid::ScalarField& field,
                                const grid::BoundaryCondition& bc,
                                const ModelParams& params, double dt,
                                long* clip_count) {
  ScalarField out = field;
  const ScalarField div = grid::divergence(grid::face_flux(field, bc, params));
  kernels::active().axpy(out.values.data(), div.values.data(), dt,
                         out.values.size());
  clip_negatives(out, clip_count);
  return out;
}

grid::ScalarField step_implicit(const grid::ScalarField& field,
                                const grid::BoundaryCondition& bc,
                                const ModelParams& params, double dt,
                                const TimeStepConfig& config) {
  field.validate();
  for (double v : field.values)
    if (!(v > 0.0))
      throw std::runtime_error("implicit method requires strictly positive field");

  const std::size_t n = field.values.size();
  ScalarField w = grid::field_log(field);

  auto residual = [&](const ScalarField& w_iter, ScalarField* u_out) {
    ScalarField u = grid::field_exp(w_iter);
    ScalarField r = grid::divergence(grid::face_flux(u, bc, params));
    for (std::size_t i = 0; i < n; ++i)
      r.values[i] = u.values[i] - field.values[i] - dt * r.values[i];
    if (u_out) *u_out = std::move(u);
    return r;
  };
  auto inf_norm = [](const ScalarField& r) {
    double m = 0.0;
    for (double v : r.values) {
      if (std::isnan(v)) return std::numeric_limits<double>::infinity();
      m = std::max(m, std::abs(v));
    }
    return m;
  };

  std::vector<double> history;
  ScalarField u_iter = field;
  ScalarField r = residual(w, &u_iter);
  double res = inf_norm(r);
  history.push_back(res);

  for (int iter = 0; iter < config.newton_max_iter; ++iter) {
    if (res <= config.newton_tol) return u_iter;

    const int bw = field.grid.dim == 1 ? 1 : field.grid.n[0] + 1;
    linalg::BandMatrix M(static_cast<int>(n), bw);
    detail::add_flux_divergence_jacobian(M, u_iter, bc, params,
                                         /*classical=*/false, -dt);
    for (std::size_t i = 0; i < n; ++i) {
      M.add(static_cast<int>(i), static_cast<int>(i), 1.0);
    }
    M.factor();
    std::vector<double> delta_u(n);
    for (std::size_t i = 0; i < n; ++i) delta_u[i] = -r.values[i];
    M.solve(delta_u);

    // delta_w = delta_u / u keeps the iterate positive automatically.
    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving) {
      ScalarField w_try = w;
      bool in_range = true;
      for (std::size_t i = 0; i < n; ++i) {
        w_try.values[i] += alpha * delta_u[i] / u_iter.values[i];
        if (!(std::abs(w_try.values[i]) < 700.0)) in_range = false;
      }
      if (!in_range) {  // exp would overflow; reject the trial
        alpha *= 0.5;
        continue;
      }
      ScalarField u_try;
      ScalarField r_try = residual(w_try, &u_try);
      const double res_try = inf_norm(r_try);
      if (res_try <= (1.0 - 1e-4 * alpha) * res || res_try <= config.newton_tol) {
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
    if (!accepted)
      throw SolverError("implicit step: Newton line search stalled", res,
                        history);
  }
  if (res <= config.newton_tol) return u_iter;
  throw SolverError("implicit step: Newton did not converge", res, history);
}

RunReport evolve(const grid::ScalarField& initial,
                 const grid::BoundaryCondition& bc, const ModelParams& params,
                 const TimeStepConfig& config) {
  initial.validate();
  params.validate();
  config.validate();
  bc.validate(initial.grid, /*positive_required=*/bc.is_dirichlet());

  const double auto_dt =
      stable_dt_for(EquationTag::Relativistic, initial.grid, params, config);
  double dt = config.dt_override > 0.0 ? config.dt_override : auto_dt;
  if (config.method == Method::ExplicitEuler &&
      dt > auto_dt * (1.0 + 1e-9))
    throw ConfigError("dt_override exceeds the explicit stability limit");

  RunReport report;
  if (config.method == Method::ExplicitEuler) {
    long clips = 0;
    report = run_loop(
        EquationTag::Relativistic, initial, params, config, dt,
        [&](const ScalarField& u, double dts) {
          return step_explicit(u, bc, params, dts, &clips);
        });
    report.clip_count = clips;
  } else {
    for (double v : initial.values)
      if (!(v > 0.0))
        throw ConfigError("implicit evolution requires strictly positive initial data");
    report = run_loop(EquationTag::Relativistic, initial, params, config, dt,
                      [&](const ScalarField& u, double dts) {
                        return step_implicit(u, bc, params, dts, config);
                      });
  }
  return report;
}

RunReport evolve_classical_heat(const grid::ScalarField& initial,
                                const grid::BoundaryCondition& bc,
                                const TimeStepConfig& config) {
  initial.validate();
  config.validate();
  bc.validate(initial.grid, /*positive_required=*/false);
  const ModelParams params;  // classical baseline has no light speed

  const double auto_dt = stable_dt_for(EquationTag::ClassicalHeat,
                                       initial.grid, params, config);
  double dt = config.dt_override > 0.0 ? config.dt_override : auto_dt;

  if (config.method == Method::ExplicitEuler) {
    if (dt > auto_dt * (1.0 + 1e-9))
      throw ConfigError("dt_override exceeds the explicit stability limit");
    return run_loop(EquationTag::ClassicalHeat, initial, params, config, dt,
                    [&](const ScalarField& u, double dts) {
                      ScalarField out = u;
                      const ScalarField div =
                          grid::divergence(grid::classical_face_flux(u, bc));
                      kernels::active().axpy(out.values.data(),
                                             div.values.data(), dts,
                                             out.values.size());
                      for (double& v : out.values)
                        if (!std::isfinite(v))
                          throw std::runtime_error("blow-up: dt too large");
                      return out;
                    });
  }
  // Backward Euler: (I - dt*L) u_new = u + dt*r_bc; L is linear so a single
  // banded solve per step suffices.
  return run_loop(
      EquationTag::ClassicalHeat, initial, params, config, dt,
      [&](const ScalarField& u, double dts) {
        std::vector<double> rhs_bc;
        linalg::BandMatrix A =
            detail::laplacian_matrix(u.grid, bc, &rhs_bc);
        const int n = static_cast<int>(u.values.size());
        const int bw = u.grid.dim == 1 ? 1 : u.grid.n[0] + 1;
        linalg::BandMatrix M(n, bw);
        for (int j = 0; j < n; ++j) {
          for (int i = std::max(0, j - bw); i <= std::min(n - 1, j + bw); ++i) {
            const double a = A.get(i, j);
            if (a != 0.0) M.add(i, j, -dts * a);
          }
          M.add(j, j, 1.0);
        }
        M.factor();
        std::vector<double> rhs(u.values);
        for (int i = 0; i < n; ++i) rhs[i] += dts * rhs_bc[i];
        M.solve(rhs);
        ScalarField out = u;
        out.values = std::move(rhs);
        return out;
      });
}

RunReport evolve_telegraph(const grid::ScalarField& initial_u,
                           const grid::ScalarField& initial_ut,
                           const grid::BoundaryCondition& bc,
                           const ModelParams& params,
                           const TimeStepConfig& config) {
  initial_u.validate();
  initial_ut.validate();
  params.validate();
  config.validate();
  bc.validate(initial_u.grid, /*positive_required=*/false);
  if (!(initial_u.grid == initial_ut.grid))
    throw ConfigError("telegraph: u and u_t must share one grid");

  const Grid& g = initial_u.grid;
  const double cfl_dt =
      stable_dt_for(EquationTag::Telegraph, g, params, config);
  double dt = config.dt_override > 0.0 ? config.dt_override : cfl_dt;
  if (dt > cfl_dt * (1.0 + 1e-9))
    throw ConfigError("telegraph: dt violates the CFL bound");

  const auto& k = kernels::active();
  const int nx = g.n[0];
  const int ny = g.dim == 2 ? g.n[1] : 1;

  auto laplacian = [&](const ScalarField& u) {
    const grid::PaddedField p = grid::pad_with_ghosts(u, bc);
    ScalarField lap = ScalarField::zeros(g);
    std::vector<double> tmp(nx);
    for (int iy = 0; iy < ny; ++iy) {
      double* row = lap.values.data() + g.index(0, iy);
      k.stencil3(row, p.row(iy), p.row(iy) + 1, p.row(iy) + 2,
                 1.0 / (g.h[0] * g.h[0]), nx);
      if (g.dim == 2) {
        k.stencil3(tmp.data(), p.row(iy - 1) + 1, p.row(iy) + 1,
                   p.row(iy + 1) + 1, 1.0 / (g.h[1] * g.h[1]), nx);
        k.axpy(row, tmp.data(), 1.0, nx);
      }
    }
    return lap;
  };

  const double inv_c2 = params.inv_c2();
  ScalarField u_prev = initial_u;
  bool have_prev = false;

  auto step = [&](const ScalarField& u, double dts) {
    const ScalarField lap = laplacian(u);
    ScalarField out = u;
    if (!have_prev) {
      // second-order start: u1 = u0 + dt*v0 + dt^2/2 * c^2 (lap u0 - v0)
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double utt =
            (lap.values[i] - initial_ut.values[i]) / inv_c2;
        out.values[i] = u.values[i] + dts * initial_ut.values[i] +
                        0.5 * dts * dts * utt;
      }
      u_prev = u;
      have_prev = true;
      return out;
    }
    const double a = inv_c2 / (dts * dts);
    const double b = 1.0 / (2.0 * dts);
    const double denom = a + b;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      out.values[i] = (lap.values[i] +
                       a * (2.0 * u.values[i] - u_prev.values[i]) +
                       b * u_prev.values[i]) /
                      denom;
      if (!std::isfinite(out.values[i]))
        throw std::runtime_error("blow-up: dt too large");
    }
    u_prev = u;
    return out;
  };

  RunReport report =
      run_loop(EquationTag::Telegraph, initial_u, params, config, dt, step);
  report.equation_tag = EquationTag::Telegraph;
  return report;
}

}  // namespace relheat::evolve
