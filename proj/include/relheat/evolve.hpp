#pragma once

#include <utility>
#include <vector>

#include "relheat/grid.hpp"
#include "relheat/types.hpp"

// Time integration of the relativistic heat equation (explicit and implicit
// Euler) plus classical-heat and telegraph baselines, producing RunReports.
namespace relheat::evolve {

enum class Method { ExplicitEuler, ImplicitEuler };
enum class EquationTag { Relativistic, ClassicalHeat, Telegraph };

const char* to_string(EquationTag tag);

struct TimeStepConfig {
  Method method = Method::ExplicitEuler;
  double t_end = 1.0;
  double cfl_parabolic = 0.25;   // in (0, 0.5]
  double cfl_hyperbolic = 0.5;   // in (0, 1]
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  std::vector<double> snapshot_times;
  double dt_override = 0.0;      // 0 = automatic stable step
  double front_threshold = 1e-8; // support-front tracking level (1D)

  void validate() const;
};

// Time series of diagnostics plus field snapshots from one evolution.
// Series are recorded at every completed step, starting from t = 0; the
// final state is always included among the snapshots.
struct RunReport {
  EquationTag equation_tag = EquationTag::Relativistic;
  ModelParams params;
  grid::Grid grid;
  double dt = 0.0;               // nominal step actually used
  double front_threshold = 1e-8;
  long clip_count = 0;           // negative-undershoot clips (explicit path)

  std::vector<double> times;
  std::vector<double> mass_series;
  std::vector<double> entropy_series;  // NaN where the field has negatives
  std::vector<double> max_series;
  std::vector<double> min_series;
  std::vector<double> front_position_series;  // NaN when absent (2D / no front)

  std::vector<std::pair<double, grid::ScalarField>> snapshots;

  const grid::ScalarField& final_state() const { return snapshots.back().second; }
};

// Largest stable explicit step: min(cfl_parabolic * h^2 / dim,
// cfl_hyperbolic * h / c). The parabolic coefficient is 1 because the
// flux's differential slope in the gradient is at most 1 at fixed u.
double stable_dt(const grid::ScalarField& field, const ModelParams& params,
                 const TimeStepConfig& config);

// Forward Euler: u + dt * div(face_flux(u)). Clips roundoff negatives
// (>= -1e-13) to zero, counting them through clip_count.
grid::ScalarField step_explicit(const grid::ScalarField& field,
                                const grid::BoundaryCondition& bc,
                                const ModelParams& params, double dt,
                                long* clip_count = nullptr);

// Backward Euler solved by damped Newton in w = log u variables; requires
// a strictly positive field. Residual contract:
// ||u_new - u - dt*divF(u_new)||_inf <= newton_tol.
grid::ScalarField step_implicit(const grid::ScalarField& field,
                                const grid::BoundaryCondition& bc,
                                const ModelParams& params, double dt,
                                const TimeStepConfig& config);

RunReport evolve(const grid::ScalarField& initial,
                 const grid::BoundaryCondition& bc, const ModelParams& params,
                 const TimeStepConfig& config);

RunReport evolve_classical_heat(const grid::ScalarField& initial,
                                const grid::BoundaryCondition& bc,
                                const TimeStepConfig& config);

// c^-2 u_tt + u_t = lap(u), leapfrog in time with the damping term
// time-averaged; dt <= cfl_hyperbolic * h / (c * sqrt(dim)).
RunReport evolve_telegraph(const grid::ScalarField& initial_u,
                           const grid::ScalarField& initial_ut,
                           const grid::BoundaryCondition& bc,
                           const ModelParams& params,
                           const TimeStepConfig& config);

}  // namespace relheat::evolve
