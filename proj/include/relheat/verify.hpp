#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "relheat/check.hpp"
#include "relheat/evolve.hpp"
#include "relheat/grid.hpp"
#include "relheat/types.hpp"

// Verification harness: weak max / comparison / uniqueness checks on run
// pairs, front-speed measurement, the telegraph counterexample, the large-c
// limit study, and the (exploratory) light-cone probe.
namespace relheat::verify {

struct LightConeEvidence {
  std::array<double, 2> apex_x{0.0, 0.0};
  double apex_t = 0.0;
  long cone_cells = 0;
  double max_deviation_in_cone = 0.0;
  double deviation_outside_cone = 0.0;
  double tolerance_used = 0.0;
  enum class Verdict { Consistent, Inconsistent, Inconclusive } verdict =
      Verdict::Inconclusive;
};

const char* to_string(LightConeEvidence::Verdict v);

// Sup/inf over the spacetime cylinder bounded by the parabolic boundary
// data (initial slice, plus the Dirichlet trace when present).
CheckResult check_weak_max(const evolve::RunReport& report,
                           const grid::BoundaryCondition& bc);

// Ordered data stay ordered: max over matching snapshots of (u_lo - u_hi).
CheckResult check_comparison_parabolic(const evolve::RunReport& report_lo,
                                       const evolve::RunReport& report_hi);

// L-inf distance of the final states against a scheme-consistency budget.
CheckResult check_uniqueness(const evolve::RunReport& report_a,
                             const evolve::RunReport& report_b);

// Least-squares slope of the support-front position through its first
// advance events (up to 16) after motion begins. Returns 0 when no front
// ever forms; throws "domain too small" when the front reaches the
// boundary. threshold must match the recorded series.
double measure_front_speed(const evolve::RunReport& report, double threshold);

// Two height-0.5 pulses launched at each other under the telegraph
// equation; passes when the recorded peak reaches 0.55 (the weak-max breach
// is demonstrated).
CheckResult telegraph_counterexample(const ModelParams& params,
                                     const grid::Grid& g);

// Distances (L-inf at t_end, matched dt) between the relativistic run at
// each c and the classical-heat run.
std::vector<std::pair<double, double>> classical_limit_study(
    const grid::ScalarField& u0, const grid::BoundaryCondition& bc,
    double t_end, const std::vector<double>& c_list);

LightConeEvidence light_cone_probe(const evolve::RunReport& report,
                                   const std::array<double, 2>& apex_x,
                                   double apex_t, const ModelParams& params);

// Named experiment suites (the scorecard building blocks). "all" runs
// everything; exploratory results never gate pass/fail.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name);

// The acceptance experiments with their tolerances pinned (the byte-level
// CLI determinism check is driven from the acceptance runner, which can
// spawn the binary).
std::vector<CheckResult> acceptance_checks();

}  // namespace relheat::verify
