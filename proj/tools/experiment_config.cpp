#include "experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "relheat/io.hpp"

namespace relheat::cli {

namespace {

double parse_num(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      v + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::istringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_num(key, tok));
  return out;
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "equation") {
    if (value != "relativistic" && value != "heat" && value != "telegraph")
      throw ConfigError(
          "config key 'equation': must be relativistic, heat or telegraph");
    equation = value;
  } else if (key == "dim") {
    const long d = parse_int(key, value);
    if (d != 1 && d != 2) throw ConfigError("config key 'dim': must be 1 or 2");
    dim = static_cast<int>(d);
  } else if (key == "n") {
    const auto parts = split(value, ',');
    if (parts.empty() || parts.size() > 2)
      throw ConfigError("config key 'n': expected n or nx,ny");
    nx = static_cast<int>(parse_int(key, parts[0]));
    ny = parts.size() == 2 ? static_cast<int>(parse_int(key, parts[1])) : 0;
    if (nx < 4 || (parts.size() == 2 && ny < 4))
      throw ConfigError("config key 'n': need at least 4 cells per axis");
  } else if (key == "extent") {
    extent = parse_list(key, value);
    if (extent.size() != 2 && extent.size() != 4)
      throw ConfigError("config key 'extent': expected lo,hi or lox,hix,loy,hiy");
  } else if (key == "c") {
    c = parse_num(key, value);
    if (!(c > 0.0)) throw ConfigError("config key 'c': must be > 0");
  } else if (key == "eps_guard") {
    eps_guard = parse_num(key, value);
    if (!(eps_guard >= 0.0 && eps_guard <= 1e-10))
      throw ConfigError("config key 'eps_guard': must lie in [0, 1e-10]");
  } else if (key == "bc") {
    bc = value;
  } else if (key == "ic") {
    ic = value;
  } else if (key == "method") {
    if (value != "explicit" && value != "implicit")
      throw ConfigError("config key 'method': must be explicit or implicit");
    method = value;
  } else if (key == "t_end") {
    t_end = parse_num(key, value);
    if (!(t_end > 0.0)) throw ConfigError("config key 't_end': must be > 0");
  } else if (key == "snapshot_times") {
    snapshot_times = parse_list(key, value);
  } else if (key == "cfl_parabolic") {
    cfl_parabolic = parse_num(key, value);
    if (!(cfl_parabolic > 0.0 && cfl_parabolic <= 0.5))
      throw ConfigError("config key 'cfl_parabolic': must lie in (0, 0.5]");
  } else if (key == "cfl_hyperbolic") {
    cfl_hyperbolic = parse_num(key, value);
    if (!(cfl_hyperbolic > 0.0 && cfl_hyperbolic <= 1.0))
      throw ConfigError("config key 'cfl_hyperbolic': must lie in (0, 1]");
  } else if (key == "newton_tol") {
    newton_tol = parse_num(key, value);
    if (!(newton_tol > 0.0))
      throw ConfigError("config key 'newton_tol': must be > 0");
  } else if (key == "newton_max_iter") {
    newton_max_iter = static_cast<int>(parse_int(key, value));
    if (newton_max_iter < 1)
      throw ConfigError("config key 'newton_max_iter': must be >= 1");
  } else if (key == "dt_override") {
    dt_override = parse_num(key, value);
    if (dt_override < 0.0)
      throw ConfigError("config key 'dt_override': must be >= 0");
  } else if (key == "front_threshold") {
    front_threshold = parse_num(key, value);
    if (!(front_threshold > 0.0))
      throw ConfigError("config key 'front_threshold': must be > 0");
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("config key 'out': must not be empty");
    out = value;
  } else if (key == "seed") {
    seed = parse_int(key, value);
  } else if (key == "series_stride") {
    series_stride = static_cast<int>(parse_int(key, value));
    if (series_stride < 1)
      throw ConfigError("config key 'series_stride': must be >= 1");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo()
    const {
  auto num = [](double v) { return io::format_double(v); };
  std::string ext;
  for (std::size_t i = 0; i < extent.size(); ++i)
    ext += (i ? "," : "") + num(extent[i]);
  std::string snaps;
  for (std::size_t i = 0; i < snapshot_times.size(); ++i)
    snaps += (i ? "," : "") + num(snapshot_times[i]);
  std::string nstr = std::to_string(nx);
  if (dim == 2) nstr += "," + std::to_string(ny > 0 ? ny : nx);
  return {
      {"equation", equation},
      {"dim", std::to_string(dim)},
      {"n", nstr},
      {"extent", ext},
      {"c", num(c)},
      {"eps_guard", num(eps_guard)},
      {"bc", bc},
      {"ic", ic},
      {"method", method},
      {"t_end", num(t_end)},
      {"snapshot_times", snaps},
      {"cfl_parabolic", num(cfl_parabolic)},
      {"cfl_hyperbolic", num(cfl_hyperbolic)},
      {"newton_tol", num(newton_tol)},
      {"newton_max_iter", std::to_string(newton_max_iter)},
      {"dt_override", num(dt_override)},
      {"front_threshold", num(front_threshold)},
      {"out", out},
      {"seed", std::to_string(seed)},
      {"series_stride", std::to_string(series_stride)},
  };
}

grid::Grid ExperimentConfig::make_grid() const {
  if (dim == 1) {
    if (extent.size() != 2)
      throw ConfigError("config key 'extent': 1D needs lo,hi");
    return grid::Grid::make_1d(nx, extent[0], extent[1]);
  }
  const int ny_eff = ny > 0 ? ny : nx;
  if (extent.size() == 2)
    return grid::Grid::make_2d(nx, ny_eff, extent[0], extent[1], extent[0],
                               extent[1]);
  return grid::Grid::make_2d(nx, ny_eff, extent[0], extent[1], extent[2],
                             extent[3]);
}

ModelParams ExperimentConfig::make_params() const {
  ModelParams p;
  p.c = c;
  p.eps_guard = eps_guard;
  p.validate();
  return p;
}

grid::BoundaryCondition ExperimentConfig::make_bc(bool positive_trace) const {
  const grid::Grid g = make_grid();
  grid::BoundaryCondition out_bc;
  if (bc == "noflux") {
    out_bc = grid::BoundaryCondition::no_flux();
  } else if (bc.rfind("dirichlet-linear:", 0) == 0) {
    const auto vals = parse_list("bc", bc.substr(17));
    if (vals.size() != 3)
      throw ConfigError("config key 'bc': dirichlet-linear:<a>,<b>,<d>");
    const double a = vals[0], bcoef = vals[1], d = vals[2];
    auto trace = [&](double x, double y) { return a * x + bcoef * y + d; };
    if (dim == 1) {
      out_bc = grid::BoundaryCondition::dirichlet_1d(trace(g.lo[0], 0.0),
                                                     trace(g.hi[0], 0.0));
    } else {
      std::vector<double> l(g.n[1]), r(g.n[1]), b2(g.n[0]), t2(g.n[0]);
      for (int i = 0; i < g.n[1]; ++i) {
        l[i] = trace(g.lo[0], g.center(1, i));
        r[i] = trace(g.hi[0], g.center(1, i));
      }
      for (int i = 0; i < g.n[0]; ++i) {
        b2[i] = trace(g.center(0, i), g.lo[1]);
        t2[i] = trace(g.center(0, i), g.hi[1]);
      }
      out_bc = grid::BoundaryCondition::dirichlet_2d(l, r, b2, t2);
    }
  } else if (bc.rfind("dirichlet:", 0) == 0) {
    const auto vals = parse_list("bc", bc.substr(10));
    if (vals.size() == 1) {
      out_bc = grid::BoundaryCondition::dirichlet_constant(vals[0]);
    } else if (vals.size() == 2 && dim == 1) {
      out_bc = grid::BoundaryCondition::dirichlet_1d(vals[0], vals[1]);
    } else {
      throw ConfigError(
          "config key 'bc': dirichlet:<g> or (1D) dirichlet:<left>,<right>");
    }
  } else {
    throw ConfigError("config key 'bc': unknown form '" + bc + "'");
  }
  out_bc.validate(g, positive_trace);
  return out_bc;
}

grid::ScalarField ExperimentConfig::make_ic(const grid::Grid& g) const {
  const auto colon = ic.find(':');
  const std::string family = ic.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? "" : ic.substr(colon + 1);

  // Bump families: the center argument places the profile in 1D; in 2D the
  // profile is radial about the domain center.
  auto radial = [&](double center1d, auto&& profile_of_distance) {
    if (g.dim == 1)
      return grid::ScalarField::from_function(g, [&](double x) {
        return profile_of_distance(std::abs(x - center1d));
      });
    const double cx = 0.5 * (g.lo[0] + g.hi[0]);
    const double cy = 0.5 * (g.lo[1] + g.hi[1]);
    return grid::ScalarField::from_function(g, [&](double x, double y) {
      return profile_of_distance(
          std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy)));
    });
  };

  if (family == "constant") {
    const double v = parse_num("ic", args);
    return grid::ScalarField::constant(g, v);
  }
  if (family == "gaussian-bump") {
    const auto a = parse_list("ic", args);
    if (a.size() != 4)
      throw ConfigError(
          "config key 'ic': gaussian-bump:<amp>,<center>,<width>,<floor>");
    return radial(a[1], [&](double r) {
      const double d = r / a[2];
      return a[3] + a[0] * std::exp(-d * d);
    });
  }
  if (family == "compact-bump") {
    const auto a = parse_list("ic", args);
    if (a.size() != 3)
      throw ConfigError(
          "config key 'ic': compact-bump:<amp>,<center>,<radius>");
    return radial(a[1], [&](double r) {
      if (r >= a[2]) return 0.0;
      const double cth = std::cos(0.5 * M_PI * r / a[2]);
      return a[0] * cth * cth;
    });
  }
  if (family == "two-pulses") {
    const auto a = parse_list("ic", args);
    if (a.size() != 3)
      throw ConfigError("config key 'ic': two-pulses:<amp>,<sep>,<width>");
    if (g.dim != 1)
      throw ConfigError("config key 'ic': two-pulses is 1D only");
    const double mid = 0.5 * (g.lo[0] + g.hi[0]);
    auto bump = [&](double x, double center) {
      const double d = std::abs(x - center);
      if (d >= a[2]) return 0.0;
      const double cth = std::cos(0.5 * M_PI * d / a[2]);
      return a[0] * cth * cth;
    };
    return grid::ScalarField::from_function(g, [&](double x) {
      return bump(x, mid - 0.5 * a[1]) + bump(x, mid + 0.5 * a[1]);
    });
  }
  if (family == "csv") {
    if (args.empty()) throw ConfigError("config key 'ic': csv:<path>");
    if (!std::filesystem::exists(args))
      throw ConfigError("config key 'ic': file '" + args + "' does not exist");
    grid::ScalarField f = io::read_field_csv(args);
    if (!grid::same_layout(f.grid, g))
      throw ConfigError("config key 'ic': CSV grid does not match n/extent");
    f.grid = g;  // adopt the configured extents (CSV centers carry roundoff)
    return f;
  }
  throw ConfigError("config key 'ic': unknown family '" + family + "'");
}

grid::ScalarField ExperimentConfig::make_ic_velocity(
    const grid::Grid& g) const {
  const auto colon = ic.find(':');
  if (ic.substr(0, colon) != "two-pulses")
    return grid::ScalarField::zeros(g);  // start from rest
  const auto a = parse_list("ic", ic.substr(colon + 1));
  if (a.size() != 3 || g.dim != 1)
    throw ConfigError("config key 'ic': two-pulses:<amp>,<sep>,<width>");
  const double mid = 0.5 * (g.lo[0] + g.hi[0]);
  auto bump_deriv = [&](double x, double center) {
    const double d = x - center;
    if (std::abs(d) >= a[2]) return 0.0;
    const double th = 0.5 * M_PI * d / a[2];
    return -a[0] * std::cos(th) * std::sin(th) * M_PI / a[2];
  };
  const double cc = c;
  return grid::ScalarField::from_function(g, [&](double x) {
    return -cc * bump_deriv(x, mid - 0.5 * a[1]) +
           cc * bump_deriv(x, mid + 0.5 * a[1]);
  });
}

evolve::TimeStepConfig ExperimentConfig::make_timestep() const {
  evolve::TimeStepConfig ts;
  ts.method = method == "implicit" ? evolve::Method::ImplicitEuler
                                   : evolve::Method::ExplicitEuler;
  ts.t_end = t_end;
  ts.cfl_parabolic = cfl_parabolic;
  ts.cfl_hyperbolic = cfl_hyperbolic;
  ts.newton_tol = newton_tol;
  ts.newton_max_iter = newton_max_iter;
  ts.snapshot_times = snapshot_times;
  ts.dt_override = dt_override;
  ts.front_threshold = front_threshold;
  ts.validate();
  return ts;
}

std::vector<std::pair<std::string, std::string>> parse_kv_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      continue;  // sections are organizational only
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (!seen.insert(key).second)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    out.emplace_back(key, value);
  }
  return out;
}

void apply_file(ExperimentConfig& cfg, const std::string& path) {
  for (const auto& [k, v] : parse_kv_file(path)) cfg.set(k, v);
}

}  // namespace relheat::cli
