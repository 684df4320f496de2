#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relheat {

// Thrown when a nonlinear solve fails to reach its residual tolerance.
struct SolverError : std::runtime_error {
  double final_residual;
  std::vector<double> residual_history;
  SolverError(const std::string& msg, double residual,
              std::vector<double> history = {})
      : std::runtime_error(msg),
        final_residual(residual),
        residual_history(std::move(history)) {}
};

// Thrown on invalid experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical and numerical constants shared by every operator.
// c is kept general with c = 1 as the default; eps_guard is a denominator
// floor that only matters at the exact point u = 0, |grad| = 0.
struct ModelParams {
  double c = 1.0;
  double eps_guard = 1e-300;

  double inv_c2() const { return 1.0 / (c * c); }

  void validate() const {
    if (!(std::isfinite(c) && c > 0.0))
      throw ConfigError("ModelParams: c must be finite and > 0");
    if (!(eps_guard >= 0.0 && eps_guard <= 1e-10))
      throw ConfigError("ModelParams: eps_guard must lie in [0, 1e-10]");
  }
};

// Spatial vector for dimension 1 or 2.
struct Vec {
  int dim = 1;
  std::array<double, 2> v{0.0, 0.0};

  Vec() = default;
  explicit Vec(double x) : dim(1), v{x, 0.0} {}
  Vec(double x, double y) : dim(2), v{x, y} {}

  double operator[](int i) const { return v[static_cast<size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<size_t>(i)]; }

  double norm2() const { return v[0] * v[0] + v[1] * v[1]; }
  double norm() const { return std::sqrt(norm2()); }
  bool finite() const { return std::isfinite(v[0]) && std::isfinite(v[1]); }
};

// Symmetric second-derivative matrix; symmetry is structural (only the
// upper triangle is stored).
struct SymMat {
  int dim = 1;
  double xx = 0.0, xy = 0.0, yy = 0.0;

  SymMat() = default;
  explicit SymMat(double m) : dim(1), xx(m) {}
  SymMat(double mxx, double mxy, double myy) : dim(2), xx(mxx), xy(mxy), yy(myy) {}

  double trace() const { return dim == 1 ? xx : xx + yy; }
  // p^T M p
  double quad(const Vec& p) const {
    if (dim == 1) return xx * p[0] * p[0];
    return xx * p[0] * p[0] + 2.0 * xy * p[0] * p[1] + yy * p[1] * p[1];
  }
  bool finite() const {
    return std::isfinite(xx) && std::isfinite(xy) && std::isfinite(yy);
  }
};

// Pointwise state (value plus caller-supplied derivatives). Houses u, Du,
// D^2u; the same structure carries w, Dw, D^2w after the log transform.
struct PointState {
  double u = 0.0;
  Vec grad;
  std::optional<SymMat> hess;

  void validate() const {
    if (!std::isfinite(u) || !grad.finite() || (hess && !hess->finite()))
      throw std::invalid_argument("invalid state: non-finite input");
  }
};

enum class Classification { Subharmonic, Superharmonic, Harmonic, Indeterminate };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::Subharmonic: return "subharmonic";
    case Classification::Superharmonic: return "superharmonic";
    case Classification::Harmonic: return "harmonic";
    default: return "indeterminate";
  }
}

}  // namespace relheat
