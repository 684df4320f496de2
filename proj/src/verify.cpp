#include "relheat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "relheat/core.hpp"
#include "relheat/kernels.hpp"
#include "relheat/stationary.hpp"

namespace relheat::verify {

namespace {

using evolve::EquationTag;
using evolve::Method;
using evolve::RunReport;
using evolve::TimeStepConfig;
using grid::BoundaryCondition;
using grid::Grid;
using grid::ScalarField;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double tol_h2(const Grid& g) {
  const double h = g.dim == 2 ? std::max(g.h[0], g.h[1]) : g.h[0];
  return 10.0 * h * h;
}

double linf(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

// --- standard initial-condition families -------------------------------

double gaussian_floor(double x, double amp, double center, double width,
                      double floor) {
  const double d = (x - center) / width;
  return floor + amp * std::exp(-d * d);
}

// cos^2 profile, compactly supported on |x - center| < radius
double compact_bump(double x, double amp, double center, double radius) {
  const double d = std::abs(x - center);
  if (d >= radius) return 0.0;
  const double c = std::cos(0.5 * M_PI * d / radius);
  return amp * c * c;
}

double compact_bump_deriv(double x, double amp, double center, double radius) {
  const double d = x - center;
  if (std::abs(d) >= radius) return 0.0;
  const double th = 0.5 * M_PI * d / radius;
  return -amp * std::cos(th) * std::sin(th) * M_PI / radius;
}

// --- manufactured smooth fields with analytic derivatives ---------------

struct AnalyticField {
  int dim;
  std::function<double(const Vec&)> w;
  std::function<Vec(const Vec&)> grad;
  std::function<SymMat(const Vec&)> hess;
};

std::vector<AnalyticField> manufactured_fields(int count1d, int count2d,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto range = [&](double lo, double hi) { return lo + (hi - lo) * uni(rng); };

  std::vector<AnalyticField> out;
  for (int i = 0; i < count1d; ++i) {
    const double a = range(0.2, 0.8), k = range(0.5, 2.5), ph = range(0.0, 6.28);
    const double b = range(-0.4, 0.4), d = range(-0.5, 0.5), e = range(-0.5, 0.5);
    AnalyticField f;
    f.dim = 1;
    f.w = [=](const Vec& p) {
      return a * std::sin(k * p[0] + ph) + b * p[0] * p[0] + d * p[0] + e;
    };
    f.grad = [=](const Vec& p) {
      return Vec(a * k * std::cos(k * p[0] + ph) + 2.0 * b * p[0] + d);
    };
    f.hess = [=](const Vec& p) {
      return SymMat(-a * k * k * std::sin(k * p[0] + ph) + 2.0 * b);
    };
    out.push_back(std::move(f));
  }
  for (int i = 0; i < count2d; ++i) {
    const double a = range(0.2, 0.7), k = range(0.5, 2.0), m = range(0.5, 2.0);
    const double ph = range(0.0, 6.28), ps = range(0.0, 6.28);
    const double b = range(-0.3, 0.3), d = range(-0.4, 0.4), e = range(-0.4, 0.4);
    const double q = range(-0.3, 0.3);
    AnalyticField f;
    f.dim = 2;
    f.w = [=](const Vec& p) {
      return a * std::sin(k * p[0] + ph) * std::cos(m * p[1] + ps) +
             b * p[0] * p[1] + d * p[0] + e * p[1] +
             0.2 * q * (p[0] * p[0] - p[1] * p[1]);
    };
    f.grad = [=](const Vec& p) {
      return Vec(a * k * std::cos(k * p[0] + ph) * std::cos(m * p[1] + ps) +
                     b * p[1] + d + 0.4 * q * p[0],
                 -a * m * std::sin(k * p[0] + ph) * std::sin(m * p[1] + ps) +
                     b * p[0] + e - 0.4 * q * p[1]);
    };
    f.hess = [=](const Vec& p) {
      const double sxx =
          -a * k * k * std::sin(k * p[0] + ph) * std::cos(m * p[1] + ps) +
          0.4 * q;
      const double syy =
          -a * m * m * std::sin(k * p[0] + ph) * std::cos(m * p[1] + ps) -
          0.4 * q;
      const double sxy =
          -a * k * m * std::cos(k * p[0] + ph) * std::sin(m * p[1] + ps) + b;
      return SymMat(sxx, sxy, syy);
    };
    out.push_back(std::move(f));
  }
  return out;
}

// Least-squares slope through (t, x) points.
double ls_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0.0;
  double tm = 0.0, xm = 0.0;
  for (const auto& p : pts) {
    tm += p.first;
    xm += p.second;
  }
  tm /= pts.size();
  xm /= pts.size();
  double num = 0.0, den = 0.0;
  for (const auto& p : pts) {
    num += (p.first - tm) * (p.second - xm);
    den += (p.first - tm) * (p.first - tm);
  }
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace

const char* to_string(LightConeEvidence::Verdict v) {
  switch (v) {
    case LightConeEvidence::Verdict::Consistent: return "consistent";
    case LightConeEvidence::Verdict::Inconsistent: return "inconsistent";
    default: return "inconclusive";
  }
}

CheckResult check_weak_max(const evolve::RunReport& report,
                           const grid::BoundaryCondition& bc) {
  if (report.times.empty()) throw std::invalid_argument("empty report");
  double sup_gamma = report.max_series.front();
  double inf_gamma = report.min_series.front();
  if (bc.is_dirichlet()) {
    sup_gamma = std::max(sup_gamma, bc.max_value(report.grid));
    inf_gamma = std::min(inf_gamma, bc.min_value(report.grid));
  }
  double over = 0.0, under = 0.0;
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    over = std::max(over, report.max_series[i] - sup_gamma);
    under = std::max(under, inf_gamma - report.min_series[i]);
  }
  const double violation = std::max({0.0, over, under});
  return make_check("weak-max", violation, tol_h2(report.grid),
                    {{"sup_boundary", sup_gamma},
                     {"inf_boundary", inf_gamma},
                     {"overshoot", over},
                     {"undershoot", under}});
}

CheckResult check_comparison_parabolic(const evolve::RunReport& lo,
                                       const evolve::RunReport& hi) {
  if (!(lo.grid == hi.grid) || lo.params.c != hi.params.c ||
      lo.snapshots.size() != hi.snapshots.size())
    throw std::invalid_argument("mismatched discretization");
  for (std::size_t s = 0; s < lo.snapshots.size(); ++s)
    if (std::abs(lo.snapshots[s].first - hi.snapshots[s].first) > 1e-12)
      throw std::invalid_argument("mismatched discretization");

  double violation = 0.0;
  for (std::size_t s = 0; s < lo.snapshots.size(); ++s) {
    const auto& a = lo.snapshots[s].second.values;
    const auto& b = hi.snapshots[s].second.values;
    for (std::size_t i = 0; i < a.size(); ++i)
      violation = std::max(violation, a[i] - b[i]);
  }
  violation = std::max(violation, 0.0);
  const double tol = tol_h2(lo.grid) + 10.0 * std::max(lo.dt, hi.dt);
  return make_check("comparison-parabolic", violation, tol,
                    {{"snapshots", double(lo.snapshots.size())}});
}

CheckResult check_uniqueness(const evolve::RunReport& a,
                             const evolve::RunReport& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("mismatched grids");
  const double violation = linf(a.final_state(), b.final_state());
  const double tol = 10.0 * (a.dt + b.dt) + tol_h2(a.grid);
  return make_check("uniqueness", violation, tol,
                    {{"dt_a", a.dt}, {"dt_b", b.dt}});
}

double measure_front_speed(const evolve::RunReport& report, double threshold) {
  if (report.grid.dim != 1)
    throw std::invalid_argument("front speed is a 1D measurement");
  if (std::abs(threshold - report.front_threshold) >
      1e-12 * std::max(1.0, threshold))
    throw std::invalid_argument(
        "threshold differs from the recorded front series");

  const auto& pos = report.front_position_series;
  const auto& t = report.times;
  const double x_hi = report.grid.hi[0];
  const double h = report.grid.h[0];

  double base = kNan;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (std::isfinite(pos[i])) {
      base = pos[i];
      break;
    }
  }
  if (!std::isfinite(base)) return 0.0;  // no front at all

  // Advance events: steps where the rightmost above-threshold cell moves.
  std::vector<std::pair<double, double>> events;
  double prev = base;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (!std::isfinite(pos[i])) continue;
    if (pos[i] >= x_hi - h)
      throw std::runtime_error("domain too small");
    if (pos[i] > prev + 1e-12) {
      prev = pos[i];
      events.emplace_back(t[i], pos[i]);
    }
  }
  // The threshold contour needs ~log2(u_max/threshold) cells of precursor
  // before it rides the real front, so the first advance events run fast
  // regardless of the equation. Skip those, then fit the most settled
  // window: the last 64 events. The window therefore spans a fixed number
  // of cells, which is what exposes unbounded classical spreading under
  // refinement (the same crossing happens faster on a finer grid) while
  // the flux-limited front converges to its physical speed.
  constexpr std::size_t kSettleEvents = 32;
  constexpr std::size_t kFitEvents = 64;
  std::vector<std::pair<double, double>> window;
  if (events.size() > kSettleEvents + 1)
    window.assign(events.begin() + kSettleEvents, events.end());
  else
    window = events;  // short run: use whatever moved
  if (window.size() > kFitEvents)
    window.erase(window.begin(), window.end() - kFitEvents);
  return ls_slope(window);
}

CheckResult telegraph_counterexample(const ModelParams& params,
                                     const grid::Grid& g) {
  params.validate();
  if (g.dim != 1)
    throw std::invalid_argument("telegraph counterexample is 1D");
  const double length = g.hi[0] - g.lo[0];
  const double mid = 0.5 * (g.lo[0] + g.hi[0]);
  const double sep = 0.15 * length;
  const double radius = 0.075 * length;
  const double c = params.c;

  auto u0 = ScalarField::from_function(g, [&](double x) {
    return compact_bump(x, 0.5, mid - sep, radius) +
           compact_bump(x, 0.5, mid + sep, radius);
  });
  auto ut0 = ScalarField::from_function(g, [&](double x) {
    return -c * compact_bump_deriv(x, 0.5, mid - sep, radius) +
           c * compact_bump_deriv(x, 0.5, mid + sep, radius);
  });

  TimeStepConfig config;
  config.t_end = 2.4 * sep / c;  // pulses meet at sep / c
  RunReport report = evolve::evolve_telegraph(
      u0, ut0, BoundaryCondition::no_flux(), params, config);

  double peak = 0.0, t_peak = 0.0;
  for (std::size_t i = 1; i < report.times.size(); ++i) {
    if (report.max_series[i] > peak) {
      peak = report.max_series[i];
      t_peak = report.times[i];
    }
  }
  const double violation = std::max(0.0, 0.55 - peak);
  return make_check("telegraph-counterexample", violation, 0.0,
                    {{"peak", peak}, {"t_peak", t_peak}});
}

std::vector<std::pair<double, double>> classical_limit_study(
    const grid::ScalarField& u0, const grid::BoundaryCondition& bc,
    double t_end, const std::vector<double>& c_list) {
  if (c_list.empty()) throw std::invalid_argument("empty c list");
  for (std::size_t i = 1; i < c_list.size(); ++i)
    if (!(c_list[i] > c_list[i - 1]))
      throw std::invalid_argument("c list must be increasing");

  TimeStepConfig config;
  config.t_end = t_end;
  // Matched discretization: one dt for every run, the tightest bound.
  double dt = std::numeric_limits<double>::infinity();
  for (double c : c_list) {
    ModelParams p;
    p.c = c;
    dt = std::min(dt, evolve::stable_dt(u0, p, config));
  }
  config.dt_override = dt;

  const RunReport classical = evolve::evolve_classical_heat(u0, bc, config);
  std::vector<std::pair<double, double>> out;
  for (double c : c_list) {
    ModelParams p;
    p.c = c;
    const RunReport rel = evolve::evolve(u0, bc, p, config);
    out.emplace_back(c, linf(rel.final_state(), classical.final_state()));
  }
  return out;
}

LightConeEvidence light_cone_probe(const evolve::RunReport& report,
                                   const std::array<double, 2>& apex_x,
                                   double apex_t, const ModelParams& params) {
  const Grid& g = report.grid;
  for (int a = 0; a < g.dim; ++a)
    if (apex_x[a] < g.lo[a] || apex_x[a] > g.hi[a])
      throw std::invalid_argument("apex outside the spacetime domain");
  if (!(apex_t > 0.0) || apex_t > report.times.back() + 1e-12)
    throw std::invalid_argument("apex outside the spacetime domain");
  if (report.snapshots.empty())
    throw std::invalid_argument("report carries no snapshots");

  // Apex value: nearest snapshot in time, nearest cell in space.
  std::size_t s_apex = 0;
  for (std::size_t s = 1; s < report.snapshots.size(); ++s)
    if (std::abs(report.snapshots[s].first - apex_t) <
        std::abs(report.snapshots[s_apex].first - apex_t))
      s_apex = s;
  auto nearest_cell = [&](double x, int axis) {
    int i = static_cast<int>(std::floor((x - g.lo[axis]) / g.h[axis]));
    return std::clamp(i, 0, g.n[axis] - 1);
  };
  const int ax = nearest_cell(apex_x[0], 0);
  const int ay = g.dim == 2 ? nearest_cell(apex_x[1], 1) : 0;
  const double apex_value = report.snapshots[s_apex].second.at(ax, ay);

  LightConeEvidence ev;
  ev.apex_x = apex_x;
  ev.apex_t = apex_t;
  ev.tolerance_used = tol_h2(g) + 10.0 * report.dt;

  // Interior max over the recorded spacetime data?
  bool interior_space = ax > 0 && ax < g.n[0] - 1 &&
                        (g.dim == 1 || (ay > 0 && ay < g.n[1] - 1));
  double global_max = -std::numeric_limits<double>::infinity();
  for (const auto& [ts, field] : report.snapshots)
    for (double v : field.values) global_max = std::max(global_max, v);
  const bool is_interior_max =
      interior_space && apex_value >= global_max - 1e-12;

  const double c = params.c;
  for (const auto& [ts, field] : report.snapshots) {
    if (ts > apex_t + 1e-14) continue;
    const double reach = c * (apex_t - ts);
    const int ny = g.dim == 2 ? g.n[1] : 1;
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < g.n[0]; ++ix) {
        const double dx = g.center(0, ix) - apex_x[0];
        const double dy = g.dim == 2 ? g.center(1, iy) - apex_x[1] : 0.0;
        const double dev = std::abs(field.at(ix, iy) - apex_value);
        if (std::sqrt(dx * dx + dy * dy) <= reach + 1e-14) {
          ++ev.cone_cells;
          ev.max_deviation_in_cone = std::max(ev.max_deviation_in_cone, dev);
        } else {
          ev.deviation_outside_cone = std::max(ev.deviation_outside_cone, dev);
        }
      }
    }
  }
  if (!is_interior_max)
    ev.verdict = LightConeEvidence::Verdict::Inconclusive;
  else if (ev.max_deviation_in_cone <= ev.tolerance_used)
    ev.verdict = LightConeEvidence::Verdict::Consistent;
  else
    ev.verdict = LightConeEvidence::Verdict::Inconsistent;
  return ev;
}

// ========================================================================
// Experiment batteries (shared by the suites and the acceptance runner).
// ========================================================================

namespace {

CheckResult transform_identity_check() {
  const auto fields = manufactured_fields(10, 10, 20240517u);
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> xy(-1.0, 1.0);
  const double cs[3] = {0.5, 1.0, 3.0};
  double worst = 0.0;
  int idx = 0;
  for (const auto& f : fields) {
    ModelParams params;
    params.c = cs[idx++ % 3];
    const double inv_c2 = params.inv_c2();
    for (int s = 0; s < 25; ++s) {
      const Vec p = f.dim == 1 ? Vec(xy(rng)) : Vec(xy(rng), xy(rng));
      const double w = f.w(p);
      const Vec dw = f.grad(p);
      const SymMat hw = f.hess(p);
      const double u = std::exp(w);
      const Vec du = f.dim == 1 ? Vec(u * dw[0]) : Vec(u * dw[0], u * dw[1]);
      SymMat hu;
      if (f.dim == 1) {
        hu = SymMat(u * (dw[0] * dw[0] + hw.xx));
      } else {
        hu = SymMat(u * (dw[0] * dw[0] + hw.xx), u * (dw[0] * dw[1] + hw.xy),
                    u * (dw[1] * dw[1] + hw.yy));
      }
      const double lhs = core::flux_divergence(u, du, hu, params);
      const double q = core::q_operator(w, dw, hw, params);
      const double rhs = u / std::sqrt(1.0 + inv_c2 * dw.norm2()) * q;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return make_check("transform-identity", worst, 1e-10,
                    {{"fields", double(fields.size())}});
}

std::vector<CheckResult> ellipticity_checks() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double cs[3] = {0.7, 1.0, 3.0};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    ModelParams params;
    params.c = cs[i % 3];
    const double mag = std::pow(10.0, -1.0 + 2.3 * uni(rng));
    const double ang = 2.0 * M_PI * uni(rng);
    const Vec p = (i % 2 == 0)
                      ? Vec(mag * std::cos(ang), mag * std::sin(ang))
                      : Vec(mag * (uni(rng) < 0.5 ? -1.0 : 1.0));
    const auto [lmin, lmax] = core::ellipticity_eigenvalues(p, params);
    const SymMat a = core::principal_part_matrix(p, params);
    double emin, emax;
    if (p.dim == 1) {
      emin = emax = a.xx;
    } else {
      // closed-form symmetric 2x2 eigendecomposition (independent route)
      const double tr = a.xx + a.yy;
      const double disc =
          std::sqrt((a.xx - a.yy) * (a.xx - a.yy) + 4.0 * a.xy * a.xy);
      emin = 0.5 * (tr - disc);
      emax = 0.5 * (tr + disc);
    }
    worst = std::max({worst, std::abs(lmin - emin), std::abs(lmax - emax)});
  }
  CheckResult eig = make_check("ellipticity-eigen", worst, 1e-12, {});

  ModelParams unit;
  const auto [l10, lmax10] =
      core::ellipticity_eigenvalues(Vec(10.0, 0.0), unit);
  CheckResult nonuni = make_check("ellipticity-nonuniform",
                                  std::max(0.0, l10 - 0.01), 0.0,
                                  {{"lambda_min_p10", l10},
                                   {"lambda_max_p10", lmax10}});
  return {eig, nonuni};
}

CheckResult flux_bound_check() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  for (double c : {0.5, 1.0, 10.0}) {
    ModelParams params;
    params.c = c;
    for (int i = 0; i < 10000 / 3 + 1; ++i) {
      const double u = std::pow(10.0, -6.0 + 7.0 * uni(rng));
      const double mag = std::pow(10.0, -6.0 + 12.0 * uni(rng));
      const double ang = 2.0 * M_PI * uni(rng);
      const Vec gvec = (i % 2 == 0)
                           ? Vec(mag * std::cos(ang), mag * std::sin(ang))
                           : Vec(mag * (uni(rng) < 0.5 ? -1.0 : 1.0));
      const Vec f = core::flux(u, gvec, params);
      worst = std::max(worst, f.norm() - c * u);
    }
  }
  return make_check("flux-bound", std::max(worst, 0.0), 1e-12, {});
}

CheckResult sign_equivalence_check() {
  const auto fields = manufactured_fields(6, 6, 99001u);
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> xy(-1.0, 1.0);
  ModelParams params;
  long mismatches = 0, compared = 0, skipped = 0;
  for (const auto& f : fields) {
    for (int s = 0; s < 40; ++s) {
      const Vec p = f.dim == 1 ? Vec(xy(rng)) : Vec(xy(rng), xy(rng));
      const double w = f.w(p);
      const Vec dw = f.grad(p);
      const SymMat hw = f.hess(p);
      const double q = core::q_operator(w, dw, hw, params);
      if (std::abs(q) < 1e-6) {  // too close to the classification boundary
        ++skipped;
        continue;
      }
      const double u = std::exp(w);
      const Vec du = f.dim == 1 ? Vec(u * dw[0]) : Vec(u * dw[0], u * dw[1]);
      const SymMat hu =
          f.dim == 1
              ? SymMat(u * (dw[0] * dw[0] + hw.xx))
              : SymMat(u * (dw[0] * dw[0] + hw.xx),
                       u * (dw[0] * dw[1] + hw.xy),
                       u * (dw[1] * dw[1] + hw.yy));
      const double div = core::flux_divergence(u, du, hu, params);
      ++compared;
      if (core::classify_residual(q, 1e-8) !=
          core::classify_residual(div, 1e-8))
        ++mismatches;
    }
  }
  return make_check("sign-equivalence", double(mismatches), 0.0,
                    {{"compared", double(compared)}, {"skipped", double(skipped)}});
}

// --- parabolic batteries -------------------------------------------------

struct RunCase {
  std::string name;
  ScalarField u0;
  BoundaryCondition bc;
  ModelParams params;
  TimeStepConfig config;
};

RunCase weak_max_case(int index) {
  const Grid g = Grid::make_1d(200, 0.0, 1.0);
  RunCase s;
  s.config.t_end = 0.05;
  s.params.c = 1.0;
  switch (index) {
    case 0:
      s.name = "gauss-dirichlet";
      s.u0 = ScalarField::from_function(
          g, [](double x) { return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1); });
      s.bc = BoundaryCondition::dirichlet_constant(0.1);
      break;
    case 1:
      s.name = "gauss-noflux";
      s.u0 = ScalarField::from_function(
          g, [](double x) { return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1); });
      s.bc = BoundaryCondition::no_flux();
      break;
    case 2:
      s.name = "compact-noflux";
      s.u0 = ScalarField::from_function(
          g, [](double x) { return compact_bump(x, 1.0, 0.5, 0.2); });
      s.bc = BoundaryCondition::no_flux();
      break;
    case 3:
      s.name = "two-bumps-dirichlet";
      s.u0 = ScalarField::from_function(g, [](double x) {
        return 0.2 + compact_bump(x, 0.5, 0.3, 0.1) +
               compact_bump(x, 0.4, 0.7, 0.08);
      });
      s.bc = BoundaryCondition::dirichlet_constant(0.2);
      break;
    case 4:
      s.name = "asymmetric-dirichlet";
      s.u0 = ScalarField::from_function(
          g, [](double x) { return gaussian_floor(x, 0.6, 0.4, 0.15, 0.2); });
      s.bc = BoundaryCondition::dirichlet_1d(0.2, 0.5);
      break;
    case 5:
      s.name = "slow-light";
      s.params.c = 0.5;
      s.u0 = ScalarField::from_function(
          g, [](double x) { return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1); });
      s.bc = BoundaryCondition::dirichlet_constant(0.1);
      break;
    case 6:
      s.name = "fast-light";
      s.params.c = 10.0;
      s.u0 = ScalarField::from_function(
          g, [](double x) { return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1); });
      s.bc = BoundaryCondition::no_flux();
      break;
    case 7:
      s.name = "implicit";
      s.config.method = Method::ImplicitEuler;
      s.config.dt_override = 2e-3;
      s.u0 = ScalarField::from_function(
          g, [](double x) { return gaussian_floor(x, 0.5, 0.5, 0.1, 0.3); });
      s.bc = BoundaryCondition::no_flux();
      break;
    case 8:
      s.name = "sine-noflux";
      s.u0 = ScalarField::from_function(g, [](double x) {
        return 0.5 + 0.3 * std::sin(2.0 * M_PI * x);
      });
      s.bc = BoundaryCondition::no_flux();
      break;
    default:
      s.name = "offset-bump-dirichlet";
      s.u0 = ScalarField::from_function(g, [](double x) {
        return 0.05 + compact_bump(x, 0.9, 0.3, 0.15);
      });
      s.bc = BoundaryCondition::dirichlet_constant(0.05);
      break;
  }
  return s;
}

std::vector<CheckResult> weak_max_battery() {
  std::vector<CheckResult> out;
  for (int i = 0; i < 10; ++i) {
    RunCase s = weak_max_case(i);
    const RunReport report = evolve::evolve(s.u0, s.bc, s.params, s.config);
    CheckResult r = check_weak_max(report, s.bc);
    r.name = "weak-max/" + s.name;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> comparison_battery() {
  std::vector<CheckResult> out;
  const Grid g1 = Grid::make_1d(200, 0.0, 1.0);

  auto run_pair = [&](const std::string& name, const ScalarField& lo,
                      const ScalarField& hi, const BoundaryCondition& bc_lo,
                      const BoundaryCondition& bc_hi, double c,
                      Method method = Method::ExplicitEuler,
                      double dt_override = 0.0) {
    TimeStepConfig config;
    config.t_end = 0.04;
    config.snapshot_times = {0.01, 0.02, 0.03};
    config.method = method;
    config.dt_override = dt_override;
    ModelParams params;
    params.c = c;
    const RunReport rlo = evolve::evolve(lo, bc_lo, params, config);
    const RunReport rhi = evolve::evolve(hi, bc_hi, params, config);
    CheckResult r = check_comparison_parabolic(rlo, rhi);
    r.name = "comparison/" + name;
    out.push_back(std::move(r));
  };

  const auto base = ScalarField::from_function(
      g1, [](double x) { return gaussian_floor(x, 0.5, 0.5, 0.1, 0.1); });
  auto shifted = base;
  for (double& v : shifted.values) v += 0.2;
  run_pair("constant-shift", base, shifted, BoundaryCondition::no_flux(),
           BoundaryCondition::no_flux(), 1.0);

  run_pair("nested-gaussians",
           ScalarField::from_function(
               g1, [](double x) { return gaussian_floor(x, 0.5, 0.5, 0.08, 0.1); }),
           ScalarField::from_function(
               g1, [](double x) { return gaussian_floor(x, 0.7, 0.5, 0.12, 0.1); }),
           BoundaryCondition::no_flux(), BoundaryCondition::no_flux(), 1.0);

  run_pair("dirichlet-floors",
           ScalarField::from_function(
               g1, [](double x) { return gaussian_floor(x, 0.4, 0.4, 0.1, 0.1); }),
           ScalarField::from_function(
               g1, [](double x) { return gaussian_floor(x, 0.4, 0.4, 0.1, 0.2); }),
           BoundaryCondition::dirichlet_constant(0.1),
           BoundaryCondition::dirichlet_constant(0.2), 1.0);

  {
    const auto lo = ScalarField::from_function(
        g1, [](double x) { return compact_bump(x, 0.8, 0.5, 0.2); });
    auto hi = lo;
    for (double& v : hi.values) v += 0.2;
    run_pair("compact-vs-lifted", lo, hi, BoundaryCondition::no_flux(),
             BoundaryCondition::no_flux(), 1.0);
  }

  run_pair("slow-light-shift", base, shifted, BoundaryCondition::no_flux(),
           BoundaryCondition::no_flux(), 0.5);
  run_pair("fast-light-shift", base, shifted, BoundaryCondition::no_flux(),
           BoundaryCondition::no_flux(), 10.0);

  run_pair("implicit-shift", base, shifted, BoundaryCondition::no_flux(),
           BoundaryCondition::no_flux(), 1.0, Method::ImplicitEuler, 1e-3);

  run_pair("sine-pair",
           ScalarField::from_function(g1,
                                      [](double x) {
                                        const double s = std::sin(M_PI * x);
                                        return 0.2 + 0.2 * s * s;
                                      }),
           ScalarField::from_function(g1,
                                      [](double x) {
                                        const double s = std::sin(M_PI * x);
                                        return 0.3 + 0.3 * s * s;
                                      }),
           BoundaryCondition::no_flux(), BoundaryCondition::no_flux(), 1.0);

  run_pair("same-boundary",
           ScalarField::from_function(
               g1, [](double x) { return gaussian_floor(x, 0.3, 0.5, 0.1, 0.1); }),
           ScalarField::from_function(
               g1, [](double x) { return gaussian_floor(x, 0.7, 0.5, 0.1, 0.1); }),
           BoundaryCondition::dirichlet_constant(0.1),
           BoundaryCondition::dirichlet_constant(0.1), 1.0);

  {
    const Grid g2 = Grid::make_2d(32, 32, 0.0, 1.0, 0.0, 1.0);
    const auto lo2 = ScalarField::from_function(g2, [](double x, double y) {
      return 0.1 + 0.6 * std::exp(-((x - 0.5) * (x - 0.5) +
                                    (y - 0.5) * (y - 0.5)) /
                                  0.02);
    });
    auto hi2 = lo2;
    for (double& v : hi2.values) v += 0.15;
    TimeStepConfig config;
    config.t_end = 0.01;
    config.snapshot_times = {0.005};
    ModelParams params;
    const RunReport rlo = evolve::evolve(lo2, BoundaryCondition::no_flux(),
                                         params, config);
    const RunReport rhi = evolve::evolve(hi2, BoundaryCondition::no_flux(),
                                         params, config);
    CheckResult r = check_comparison_parabolic(rlo, rhi);
    r.name = "comparison/2d-shift";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> uniqueness_battery() {
  std::vector<CheckResult> out;
  const Grid g = Grid::make_1d(128, 0.0, 1.0);
  const auto u0 = ScalarField::from_function(
      g, [](double x) { return gaussian_floor(x, 0.5, 0.5, 0.12, 0.3); });
  const auto bc = BoundaryCondition::no_flux();
  ModelParams params;

  {
    TimeStepConfig config;
    config.t_end = 0.02;
    const RunReport a = evolve::evolve(u0, bc, params, config);
    const RunReport b = evolve::evolve(u0, bc, params, config);
    CheckResult r = make_check("uniqueness/replay", linf(a.final_state(), b.final_state()), 0.0, {});
    out.push_back(std::move(r));
  }
  {
    TimeStepConfig ex;
    ex.t_end = 0.02;
    TimeStepConfig im = ex;
    im.method = Method::ImplicitEuler;
    im.dt_override = 4e-4;
    const RunReport a = evolve::evolve(u0, bc, params, ex);
    const RunReport b = evolve::evolve(u0, bc, params, im);
    CheckResult r = check_uniqueness(a, b);
    r.name = "uniqueness/explicit-vs-implicit";
    out.push_back(std::move(r));
  }
  {
    // First-order-in-dt consistency: distances between successive dt
    // halvings shrink by about two.
    TimeStepConfig c1, c2, c4;
    c1.t_end = c2.t_end = c4.t_end = 0.02;
    c1.dt_override = 1e-5;
    c2.dt_override = 5e-6;
    c4.dt_override = 2.5e-6;
    const RunReport r1 = evolve::evolve(u0, bc, params, c1);
    const RunReport r2 = evolve::evolve(u0, bc, params, c2);
    const RunReport r4 = evolve::evolve(u0, bc, params, c4);
    const double d12 = linf(r1.final_state(), r2.final_state());
    const double d24 = linf(r2.final_state(), r4.final_state());
    const double ratio = d24 > 0.0 ? d12 / d24 : 2.0;
    CheckResult r = make_check("uniqueness/dt-richardson",
                               std::abs(ratio - 2.0), 0.5,
                               {{"d12", d12}, {"d24", d24}, {"ratio", ratio}});
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> conservation_battery() {
  std::vector<CheckResult> out;
  auto add_run = [&](const std::string& name, const ScalarField& u0,
                     const ModelParams& params, double t_end) {
    TimeStepConfig config;
    config.t_end = t_end;
    const RunReport r =
        evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
    const double m0 = r.mass_series.front();
    double mass_dev = 0.0;
    for (double m : r.mass_series)
      mass_dev = std::max(mass_dev, std::abs(m - m0) / std::abs(m0));
    out.push_back(make_check("conservation/" + name, mass_dev, 1e-12,
                             {{"mass0", m0}, {"clips", double(r.clip_count)}}));

    double entropy_rise = 0.0;
    for (std::size_t i = 1; i < r.entropy_series.size(); ++i)
      entropy_rise = std::max(
          entropy_rise, r.entropy_series[i] - r.entropy_series[i - 1]);
    out.push_back(make_check("entropy/" + name, std::max(0.0, entropy_rise),
                             1e-10,
                             {{"S0", r.entropy_series.front()},
                              {"S_end", r.entropy_series.back()}}));
  };

  const Grid g = Grid::make_1d(200, 0.0, 1.0);
  add_run("gauss", ScalarField::from_function(g, [](double x) {
            return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1);
          }),
          ModelParams{}, 0.05);
  add_run("compact", ScalarField::from_function(g, [](double x) {
            return compact_bump(x, 1.0, 0.5, 0.2);
          }),
          ModelParams{}, 0.05);
  {
    ModelParams fast;
    fast.c = 10.0;
    add_run("fast-light", ScalarField::from_function(g, [](double x) {
              return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1);
            }),
            fast, 0.02);
  }
  {
    const Grid g2 = Grid::make_2d(48, 48, 0.0, 1.0, 0.0, 1.0);
    add_run("2d-gauss", ScalarField::from_function(g2, [](double x, double y) {
              return 0.1 + 0.7 * std::exp(-((x - 0.5) * (x - 0.5) +
                                            (y - 0.5) * (y - 0.5)) /
                                          0.03);
            }),
            ModelParams{}, 0.01);
  }
  {
    const Grid gw = Grid::make_1d(160, -1.0, 1.0);
    add_run("wide-compact", ScalarField::from_function(gw, [](double x) {
              return compact_bump(x, 0.9, -0.2, 0.3);
            }),
            ModelParams{}, 0.05);
  }
  return out;
}

std::vector<CheckResult> telegraph_battery() {
  std::vector<CheckResult> out;
  const Grid g = Grid::make_1d(800, -2.0, 2.0);
  ModelParams params;  // c = 1

  out.push_back(telegraph_counterexample(params, g));

  {
    // control: one pulse alone never rises above its initial height
    const double radius = 0.075 * 4.0;
    auto u0 = ScalarField::from_function(g, [&](double x) {
      return compact_bump(x, 0.5, -0.6, radius);
    });
    auto ut0 = ScalarField::from_function(g, [&](double x) {
      return -compact_bump_deriv(x, 0.5, -0.6, radius);
    });
    TimeStepConfig config;
    config.t_end = 1.44;
    const RunReport r = evolve::evolve_telegraph(
        u0, ut0, BoundaryCondition::no_flux(), params, config);
    double peak = 0.0;
    for (double m : r.max_series) peak = std::max(peak, m);
    out.push_back(make_check("telegraph-control-single",
                             std::max(0.0, peak - 0.5), tol_h2(g),
                             {{"peak", peak}}));
  }
  {
    // contrast: the same two-pulse density under the relativistic equation
    const double radius = 0.075 * 4.0, sep = 0.15 * 4.0;
    auto u0 = ScalarField::from_function(g, [&](double x) {
      return compact_bump(x, 0.5, -sep, radius) +
             compact_bump(x, 0.5, sep, radius);
    });
    TimeStepConfig config;
    config.t_end = 0.3;
    const RunReport r =
        evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
    double peak = 0.0;
    for (double m : r.max_series) peak = std::max(peak, m);
    out.push_back(make_check("relativistic-contrast",
                             std::max(0.0, peak - 0.5), tol_h2(g),
                             {{"peak", peak}}));
  }
  return out;
}

std::vector<CheckResult> front_speed_battery() {
  std::vector<CheckResult> out;
  ModelParams params;  // c = 1
  const double bump_radius = 0.15;

  auto compact_ic = [&](const Grid& g) {
    return ScalarField::from_function(g, [&](double x) {
      return compact_bump(x, 1.0, 0.0, bump_radius);
    });
  };

  {
    // Long run so the measured window sits well past the precursor
    // transient of the threshold contour.
    const Grid g = Grid::make_1d(800, -1.0, 1.0);  // h = 1/400
    TimeStepConfig config;
    config.t_end = 0.7;
    const RunReport r = evolve::evolve(compact_ic(g),
                                       BoundaryCondition::no_flux(), params,
                                       config);
    const double speed = measure_front_speed(r, 1e-8);
    out.push_back(make_check("front-speed-relativistic",
                             std::max(0.0, speed - 1.05), 0.0,
                             {{"speed", speed}}));
  }
  {
    // Classical control, event-matched: each resolution runs until the
    // threshold contour has crossed ~60 cells, which the heat kernel tails
    // reach in O(h) time; the crossing speed then grows without bound
    // under refinement.
    auto control = [&](int n) {
      const Grid g = Grid::make_1d(n, -1.0, 1.0);
      const double h = g.h[0];
      const double log_ratio = std::log(1.0 / 1e-8);
      TimeStepConfig config;
      config.t_end = ((bump_radius + 60.0 * h) * (bump_radius + 60.0 * h) -
                      bump_radius * bump_radius) /
                     (4.0 * log_ratio);
      const RunReport r = evolve::evolve_classical_heat(
          compact_ic(g), BoundaryCondition::no_flux(), config);
      return measure_front_speed(r, 1e-8);
    };
    const double est_coarse = control(200);  // h = 1/100
    const double est_fine = control(800);    // h = 1/400
    out.push_back(make_check("front-speed-classical-growth",
                             std::max(0.0, 1.5 * est_coarse - est_fine), 0.0,
                             {{"estimate_h100", est_coarse},
                              {"estimate_h400", est_fine}}));
  }
  return out;
}

std::vector<CheckResult> limit_battery() {
  const Grid g = Grid::make_1d(128, 0.0, 1.0);
  const auto u0 = ScalarField::from_function(
      g, [](double x) { return gaussian_floor(x, 0.7, 0.5, 0.15, 0.3); });
  const auto table = classical_limit_study(u0, BoundaryCondition::no_flux(),
                                           0.05, {2.0, 10.0, 50.0});
  double violation = 0.0;
  std::map<std::string, double> ctx;
  for (std::size_t i = 0; i < table.size(); ++i) {
    ctx["dist_c" + std::to_string(int(table[i].first))] = table[i].second;
    if (i > 0) violation = std::max(violation, table[i].second - table[i - 1].second);
  }
  std::vector<CheckResult> out;
  out.push_back(make_check("classical-limit", std::max(0.0, violation), 0.0,
                           std::move(ctx)));

  // recorded, not asserted: dist * c^2 stays of one magnitude
  std::map<std::string, double> probe;
  for (const auto& [c, d] : table) probe["c2dist_c" + std::to_string(int(c))] = c * c * d;
  CheckResult scaled = make_check("classical-limit-scaling", 0.0, 0.0, std::move(probe));
  scaled.exploratory = true;
  out.push_back(std::move(scaled));
  return out;
}

// --- stationary batteries ------------------------------------------------

stationary::StationaryProblem problem_1d(int n, double wl, double wr) {
  stationary::StationaryProblem p;
  p.grid = Grid::make_1d(n, 0.0, 1.0);
  p.bc = BoundaryCondition::dirichlet_1d(wl, wr);
  return p;
}

std::vector<CheckResult> stationary_battery() {
  std::vector<CheckResult> out;
  ModelParams params;  // c = 1

  // oracle agreement at h = 1/200 and the refinement ratio
  const auto oracle = stationary::shoot_1d(0.0, -0.5, params, 100000);
  auto solve_err = [&](int n) {
    const auto problem = problem_1d(n, 0.0, -0.5);
    const ScalarField w = stationary::solve_harmonic(problem, params);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = problem.grid.center(0, i);
      err = std::max(err, std::abs(w.values[i] - stationary::sample_profile(
                                                     oracle, 0.0, 1.0, x)));
    }
    return err;
  };
  const double err200 = solve_err(200);
  const double err400 = solve_err(400);
  out.push_back(make_check("stationary-oracle", err200, 1e-6,
                           {{"err_h200", err200}, {"err_h400", err400}}));
  const double ratio = err400 > 0.0 ? err200 / err400 : 4.0;
  out.push_back(make_check("stationary-oracle-order",
                           std::max(0.0, 3.5 - ratio), 0.0,
                           {{"ratio", ratio}}));

  // strong max on a family of solves (criterion: interior strictly between
  // boundary extrema; constants exactly constant)
  std::vector<ScalarField> solutions;
  std::vector<BoundaryCondition> bcs;
  {
    const auto p = problem_1d(200, 0.0, -0.5);
    solutions.push_back(stationary::solve_harmonic(p, params));
    bcs.push_back(p.bc);
  }
  {
    const auto p = problem_1d(200, -0.2, 0.4);
    solutions.push_back(stationary::solve_harmonic(p, params));
    bcs.push_back(p.bc);
  }
  {
    stationary::StationaryProblem p;
    p.grid = Grid::make_2d(32, 32, 0.0, 1.0, 0.0, 1.0);
    std::vector<double> l(32), r(32), b(32), t(32);
    for (int i = 0; i < 32; ++i) {
      const double yc = p.grid.center(1, i);
      const double xc = p.grid.center(0, i);
      l[i] = 0.2 * 0.0 - 0.4 * yc;
      r[i] = 0.2 * 1.0 - 0.4 * yc;
      b[i] = 0.2 * xc - 0.4 * 0.0;
      t[i] = 0.2 * xc - 0.4 * 1.0;
    }
    p.bc = BoundaryCondition::dirichlet_2d(l, r, b, t);
    solutions.push_back(stationary::solve_harmonic(p, params));
    bcs.push_back(p.bc);
  }
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    CheckResult r = stationary::verify_strong_max(solutions[i], bcs[i]);
    r.name = "strong-max/case" + std::to_string(i);
    out.push_back(std::move(r));
  }
  {
    const auto p = problem_1d(200, 0.3, 0.3);
    const ScalarField w = stationary::solve_harmonic(p, params);
    const auto e = grid::extrema(w);
    out.push_back(make_check("stationary-constant", e.max - e.min, 1e-12,
                             {{"value", w.values[0]}}));
  }

  // flux balance over random admissible balls (1D and 2D solutions)
  {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    const ScalarField u1 = grid::field_exp(solutions[0]);
    for (int k = 0; k < 5; ++k) {
      const double cx = 0.3 + 0.4 * uni(rng);
      const double radius = 0.05 + 0.15 * uni(rng);
      worst = std::max(worst, std::abs(grid::flux_balance_sphere(
                                  u1, {cx, 0.0}, radius, params)));
    }
    const ScalarField u2 = grid::field_exp(solutions[2]);
    for (int k = 0; k < 5; ++k) {
      const double cx = 0.35 + 0.3 * uni(rng);
      const double cy = 0.35 + 0.3 * uni(rng);
      const double radius = 0.08 + 0.12 * uni(rng);
      worst = std::max(worst, std::abs(grid::flux_balance_sphere(
                                  u2, {cx, cy}, radius, params)));
    }
    out.push_back(make_check("flux-balance", worst, 1e-9, {}));
  }

  // elliptic comparison: ordered boundary data, and the exact-shift pair
  {
    const auto pa = problem_1d(200, 0.0, -0.5);
    const auto pb = problem_1d(200, 0.1, -0.4);
    const ScalarField wa = stationary::solve_harmonic(pa, params);
    const ScalarField wb = stationary::solve_harmonic(pb, params);
    CheckResult r = stationary::verify_comparison_elliptic(wa, pa.bc, wb,
                                                           pb.bc, 2e-10);
    r.name = "comparison-elliptic/ordered";
    out.push_back(std::move(r));

    const double kappa = 0.3;
    ScalarField wshift = wa;
    for (double& v : wshift.values) v += kappa;
    auto bc_shift = BoundaryCondition::dirichlet_1d(0.0 + kappa, -0.5 + kappa);
    CheckResult rs = stationary::verify_comparison_elliptic(wa, pa.bc, wshift,
                                                            bc_shift, 2e-10);
    rs.name = "comparison-elliptic/shift";
    double gap_min = std::numeric_limits<double>::infinity();
    double gap_max = -gap_min;
    for (std::size_t i = 0; i < wa.values.size(); ++i) {
      const double gap = wshift.values[i] - wa.values[i];
      gap_min = std::min(gap_min, gap);
      gap_max = std::max(gap_max, gap);
    }
    rs.context["gap_min"] = gap_min;
    rs.context["gap_max"] = gap_max;
    out.push_back(std::move(rs));
  }

  // tangency sweep: shared left value, ordered right values -> strictly
  // positive interior gaps
  {
    const auto base = stationary::solve_harmonic(problem_1d(200, 0.0, -0.5),
                                                 params);
    double worst_min_gap = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 5; ++k) {
      const auto other = stationary::solve_harmonic(
          problem_1d(200, 0.0, -0.5 + 0.08 * k), params);
      double min_gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < base.values.size(); ++i)
        min_gap = std::min(min_gap, other.values[i] - base.values[i]);
      worst_min_gap = std::min(worst_min_gap, min_gap);
    }
    out.push_back(make_check("tangency-sweep",
                             worst_min_gap > 0.0 ? 0.0 : 1.0 - worst_min_gap,
                             0.0, {{"min_gap", worst_min_gap}}));
  }

  // uniqueness w.r.t. the initial guess (guesses honor the boundary trace;
  // a guess that badly misses it saturates the boundary faces, where the
  // flux Jacobian goes flat and the solve correctly reports non-convergence)
  {
    const auto p = problem_1d(200, 0.0, -0.5);
    const ScalarField w1 = stationary::solve_harmonic(p, params);
    auto p2 = p;
    p2.initial_guess = ScalarField::from_function(p.grid, [](double x) {
      return -0.5 * x + 0.3 * x * (1.0 - x);
    });
    const ScalarField w2 = stationary::solve_harmonic(p2, params);
    auto p3 = p;
    p3.initial_guess = ScalarField::from_function(p.grid, [](double x) {
      return -0.5 * x + 0.2 * std::sin(3.0 * M_PI * x);
    });
    const ScalarField w3 = stationary::solve_harmonic(p3, params);
    const double d = std::max(linf(w1, w2), linf(w1, w3));
    out.push_back(make_check("stationary-guess-independence", d, 1e-8, {}));
  }

  // monotone dependence on the boundary data (2D, three raised faces)
  {
    stationary::StationaryProblem p;
    p.grid = Grid::make_2d(24, 24, 0.0, 1.0, 0.0, 1.0);
    std::vector<double> l(24), r(24), b(24), t(24);
    for (int i = 0; i < 24; ++i) {
      const double xc = p.grid.center(0, i);
      l[i] = 0.0;
      r[i] = 0.3;
      b[i] = 0.3 * xc;
      t[i] = 0.3 * xc;
    }
    p.bc = BoundaryCondition::dirichlet_2d(l, r, b, t);
    const ScalarField w_base = stationary::solve_harmonic(p, params);
    double violation = 0.0;
    const int faces[3] = {3, 12, 20};
    for (int f : faces) {
      auto p_up = p;
      auto l_up = l;
      l_up[f] += 0.5;
      p_up.bc = BoundaryCondition::dirichlet_2d(l_up, r, b, t);
      const ScalarField w_up = stationary::solve_harmonic(p_up, params);
      for (std::size_t i = 0; i < w_base.values.size(); ++i)
        violation = std::max(violation, w_base.values[i] - w_up.values[i]);
    }
    out.push_back(make_check("monotone-boundary", std::max(0.0, violation),
                             tol_h2(p.grid), {}));
  }
  return out;
}

std::vector<CheckResult> determinism_battery() {
  std::vector<CheckResult> out;
  const Grid g = Grid::make_1d(128, 0.0, 1.0);
  const auto u0 = ScalarField::from_function(
      g, [](double x) { return gaussian_floor(x, 0.6, 0.5, 0.1, 0.2); });
  TimeStepConfig config;
  config.t_end = 0.01;
  ModelParams params;

  const RunReport a =
      evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
  const RunReport b =
      evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
  double dev = linf(a.final_state(), b.final_state());
  for (std::size_t i = 0; i < a.mass_series.size(); ++i)
    dev = std::max(dev, std::abs(a.mass_series[i] - b.mass_series[i]));
  out.push_back(make_check("determinism-replay", dev, 0.0, {}));

  // backend equivalence: scalar and SIMD kernels must agree bitwise
  if (kernels::avx2_backend() != nullptr) {
    const std::string previous = kernels::active().name;
    kernels::select("scalar");
    const RunReport rs =
        evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
    kernels::select("avx2");
    const RunReport rv =
        evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
    kernels::select(previous);
    const double kdev = linf(rs.final_state(), rv.final_state());
    out.push_back(make_check("determinism-backends", kdev, 0.0,
                             {{"avx2_available", 1.0}}));
  } else {
    out.push_back(make_check("determinism-backends", 0.0, 0.0,
                             {{"avx2_available", 0.0}}));
  }
  return out;
}

std::vector<CheckResult> lightcone_battery() {
  std::vector<CheckResult> out;
  ModelParams params;
  const Grid g = Grid::make_1d(200, 0.0, 1.0);

  {
    // constant run: every apex is an interior max, deviation zero
    TimeStepConfig config;
    config.t_end = 0.02;
    for (int k = 1; k <= 8; ++k)
      config.snapshot_times.push_back(0.02 * k / 8.0);
    const RunReport r = evolve::evolve(ScalarField::constant(g, 2.0),
                                       BoundaryCondition::no_flux(), params,
                                       config);
    const LightConeEvidence ev =
        light_cone_probe(r, {0.5, 0.0}, 0.015, params);
    CheckResult c = make_check(
        "lightcone/constant-run", 0.0, 0.0,
        {{"cone_cells", double(ev.cone_cells)},
         {"dev_in_cone", ev.max_deviation_in_cone},
         {"consistent",
          ev.verdict == LightConeEvidence::Verdict::Consistent ? 1.0 : 0.0}});
    c.exploratory = true;
    out.push_back(std::move(c));
  }
  {
    // diffusing bump: the spacetime max lives on the initial slice, so the
    // probe must come back inconclusive
    TimeStepConfig config;
    config.t_end = 0.02;
    for (int k = 1; k <= 8; ++k)
      config.snapshot_times.push_back(0.02 * k / 8.0);
    const auto u0 = ScalarField::from_function(
        g, [](double x) { return gaussian_floor(x, 0.8, 0.5, 0.1, 0.1); });
    const RunReport r =
        evolve::evolve(u0, BoundaryCondition::no_flux(), params, config);
    const LightConeEvidence ev =
        light_cone_probe(r, {0.5, 0.0}, 0.01, params);
    CheckResult c = make_check(
        "lightcone/bump-run", 0.0, 0.0,
        {{"inconclusive",
          ev.verdict == LightConeEvidence::Verdict::Inconclusive ? 1.0 : 0.0},
         {"dev_in_cone", ev.max_deviation_in_cone}});
    c.exploratory = true;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"core",  "parabolic",  "telegraph",   "front",
          "limit", "stationary", "determinism", "lightcone"};
}

std::vector<CheckResult> run_suite(const std::string& name) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  if (name == "core") {
    out.push_back(transform_identity_check());
    append(ellipticity_checks());
    out.push_back(flux_bound_check());
    out.push_back(sign_equivalence_check());
  } else if (name == "parabolic") {
    append(weak_max_battery());
    append(comparison_battery());
    append(uniqueness_battery());
    append(conservation_battery());
  } else if (name == "telegraph") {
    append(telegraph_battery());
  } else if (name == "front") {
    append(front_speed_battery());
  } else if (name == "limit") {
    append(limit_battery());
  } else if (name == "stationary") {
    append(stationary_battery());
  } else if (name == "determinism") {
    append(determinism_battery());
  } else if (name == "lightcone") {
    append(lightcone_battery());
  } else if (name == "all") {
    for (const auto& n : suite_names()) append(run_suite(n));
  } else {
    throw ConfigError("unknown verification suite '" + name + "'");
  }
  return out;
}

std::vector<CheckResult> acceptance_checks() {
  std::vector<CheckResult> out;
  auto tag = [&](const char* prefix, std::vector<CheckResult> v) {
    for (auto& r : v) {
      r.name = std::string(prefix) + "/" + r.name;
      out.push_back(std::move(r));
    }
  };
  tag("c01", {transform_identity_check()});
  tag("c02", ellipticity_checks());
  tag("c03", weak_max_battery());
  tag("c04", comparison_battery());
  tag("c05", telegraph_battery());
  tag("c06", front_speed_battery());
  {
    auto limit = limit_battery();
    limit.resize(1);  // the scaling probe is exploratory, not a criterion
    tag("c07", std::move(limit));
  }
  {
    auto st = stationary_battery();
    std::vector<CheckResult> oracle, strongmax, fluxbal;
    for (auto& r : st) {
      if (r.name.rfind("stationary-oracle", 0) == 0) oracle.push_back(r);
      else if (r.name.rfind("strong-max", 0) == 0 ||
               r.name == "stationary-constant")
        strongmax.push_back(r);
      else if (r.name == "flux-balance")
        fluxbal.push_back(r);
    }
    tag("c08", std::move(oracle));
    tag("c09", std::move(strongmax));
    tag("c10", std::move(fluxbal));
  }
  tag("c11", conservation_battery());
  tag("c12", determinism_battery());
  return out;
}

}  // namespace relheat::verify
