#pragma once

#include <map>
#include <string>

namespace relheat {

// Named verification outcome. Invariant: passed <=> violation <= tolerance
// (use make_check). Exploratory results never gate exit codes.
struct CheckResult {
  std::string name;
  bool passed = false;
  double violation = 0.0;   // max measured breach, >= 0
  double tolerance = 0.0;
  bool exploratory = false;
  std::map<std::string, double> context;
};

inline CheckResult make_check(std::string name, double violation,
                              double tolerance,
                              std::map<std::string, double> context = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.violation = violation;
  r.tolerance = tolerance;
  r.passed = violation <= tolerance;
  r.context = std::move(context);
  return r;
}

}  // namespace relheat
