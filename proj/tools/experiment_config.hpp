#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relheat/evolve.hpp"
#include "relheat/grid.hpp"
#include "relheat/types.hpp"

// CLI-side experiment configuration: flat key=value text (optional INI-style
// section headers are cosmetic), strict schema, flags override file keys.
namespace relheat::cli {

struct ExperimentConfig {
  std::string equation = "relativistic";  // relativistic | heat | telegraph
  int dim = 1;
  int nx = 200;
  int ny = 0;  // 0 -> same as nx (2D only)
  std::vector<double> extent{0.0, 1.0};
  double c = 1.0;
  double eps_guard = 1e-300;
  std::string bc = "noflux";
  std::string ic = "gaussian-bump:0.8,0.5,0.1,0.1";
  std::string method = "explicit";
  double t_end = 0.05;
  std::vector<double> snapshot_times;
  double cfl_parabolic = 0.25;
  double cfl_hyperbolic = 0.5;
  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  double dt_override = 0.0;
  double front_threshold = 1e-8;
  std::string out = "out";
  long seed = 0;
  int series_stride = 1;

  // Applies one key=value assignment; throws ConfigError naming the key.
  void set(const std::string& key, const std::string& value);
  // Echo of the effective configuration, canonical key order.
  std::vector<std::pair<std::string, std::string>> echo() const;

  grid::Grid make_grid() const;
  ModelParams make_params() const;
  // positive_trace: density-field rule (u problems); w problems pass false.
  grid::BoundaryCondition make_bc(bool positive_trace) const;
  grid::ScalarField make_ic(const grid::Grid& g) const;
  grid::ScalarField make_ic_velocity(const grid::Grid& g) const;  // telegraph
  evolve::TimeStepConfig make_timestep() const;
};

// Strict key=value file: blank lines, '#'/';' comments and [sections]
// allowed; unknown or duplicate keys are errors.
std::vector<std::pair<std::string, std::string>> parse_kv_file(
    const std::string& path);

void apply_file(ExperimentConfig& cfg, const std::string& path);

}  // namespace relheat::cli
