// relheat: conservative solvers and a verification harness for the
// relativistic heat equation, with classical-heat and telegraph baselines.
//
// Subcommands: evolve, stationary, verify, sweep. Configuration comes from
// a flat key=value file (--config) with command-line overrides (--set, plus
// a few dedicated flags). RELHEAT_OUTPUT_ROOT reroots relative output dirs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiment_config.hpp"
#include "relheat/evolve.hpp"
#include "relheat/io.hpp"
#include "relheat/stationary.hpp"
#include "relheat/verify.hpp"

namespace fs = std::filesystem;
using namespace relheat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

fs::path resolve_out(const std::string& configured) {
  fs::path p(configured);
  if (const char* root = std::getenv("RELHEAT_OUTPUT_ROOT"))
    if (p.is_relative()) return fs::path(root) / p;
  return p;
}

void apply_overrides(cli::ExperimentConfig& cfg,
                     const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
}

evolve::RunReport run_configured(const cli::ExperimentConfig& cfg) {
  const grid::Grid g = cfg.make_grid();
  const auto ts = cfg.make_timestep();
  const auto u0 = cfg.make_ic(g);
  if (cfg.equation == "relativistic") {
    return evolve::evolve(u0, cfg.make_bc(true), cfg.make_params(), ts);
  }
  if (cfg.equation == "heat") {
    return evolve::evolve_classical_heat(u0, cfg.make_bc(false), ts);
  }
  return evolve::evolve_telegraph(u0, cfg.make_ic_velocity(g),
                                  cfg.make_bc(false), cfg.make_params(), ts);
}

// Writes series.csv, snapshot CSVs, report.json and the manifest.
void write_run_outputs(const fs::path& dir, const evolve::RunReport& report,
                       const cli::ExperimentConfig& cfg) {
  fs::create_directories(dir);
  std::vector<fs::path> files;

  evolve::RunReport thinned = report;
  if (cfg.series_stride > 1) {
    auto thin = [&](std::vector<double>& v) {
      std::vector<double> outv;
      for (std::size_t i = 0; i < v.size(); i += cfg.series_stride)
        outv.push_back(v[i]);
      if ((v.size() - 1) % cfg.series_stride != 0) outv.push_back(v.back());
      v = std::move(outv);
    };
    thin(thinned.times);
    thin(thinned.mass_series);
    thin(thinned.entropy_series);
    thin(thinned.max_series);
    thin(thinned.min_series);
    thin(thinned.front_position_series);
  }

  const fs::path series = dir / "series.csv";
  io::write_series_csv(series, thinned);
  files.push_back(series);

  std::vector<std::string> snap_names;
  for (std::size_t i = 0; i < report.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%03zu.csv", i);
    const fs::path p = dir / name;
    io::write_field_csv(p, report.snapshots[i].second);
    files.push_back(p);
    snap_names.push_back(name);
  }

  const fs::path rj = dir / "report.json";
  io::write_report_json(rj, thinned, snap_names);
  files.push_back(rj);

  io::write_manifest(dir, files, cfg.echo());
}

int cmd_evolve(const cli::ExperimentConfig& cfg) {
  const evolve::RunReport report = run_configured(cfg);
  write_run_outputs(resolve_out(cfg.out), report, cfg);
  return kExitOk;
}

int cmd_stationary(const cli::ExperimentConfig& cfg) {
  stationary::StationaryProblem problem;
  problem.grid = cfg.make_grid();
  problem.bc = cfg.make_bc(false);  // w-values, any sign
  problem.newton_tol = cfg.newton_tol;
  problem.newton_max_iter = cfg.newton_max_iter;

  stationary::ConvergenceLog log;
  const grid::ScalarField w =
      stationary::solve_harmonic(problem, cfg.make_params(), &log);

  const fs::path dir = resolve_out(cfg.out);
  fs::create_directories(dir);
  std::vector<fs::path> files;
  const fs::path wcsv = dir / "solution_w.csv";
  io::write_field_csv(wcsv, w);
  files.push_back(wcsv);
  const fs::path ucsv = dir / "solution_u.csv";
  io::write_field_csv(ucsv, grid::field_exp(w));
  files.push_back(ucsv);

  {
    std::ofstream out(dir / "convergence.json", std::ios::binary);
    out << "[\n";
    for (std::size_t i = 0; i < log.entries.size(); ++i) {
      const auto& e = log.entries[i];
      out << "  {\"iteration\": " << e.iteration
          << ", \"residual\": " << io::format_double(e.residual)
          << ", \"damping\": " << io::format_double(e.damping) << "}"
          << (i + 1 < log.entries.size() ? ",\n" : "\n");
    }
    out << "]\n";
    files.push_back(dir / "convergence.json");
  }
  io::write_manifest(dir, files, cfg.echo());
  return kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& out_dir) {
  const auto results = verify::run_suite(suite);
  bool all_passed = true;
  std::printf("%-44s %-6s %14s %14s\n", "check", "result", "violation",
              "tolerance");
  for (const auto& r : results) {
    const char* status = r.exploratory ? "INFO" : (r.passed ? "PASS" : "FAIL");
    std::printf("%-44s %-6s %14.6g %14.6g\n", r.name.c_str(), status,
                r.violation, r.tolerance);
    if (!r.exploratory && !r.passed) all_passed = false;
  }
  std::printf("%zu checks, %s\n", results.size(),
              all_passed ? "all non-exploratory passed" : "FAILURES present");

  if (!out_dir.empty()) {
    const fs::path dir = resolve_out(out_dir);
    fs::create_directories(dir);
    std::vector<fs::path> files;
    io::write_scorecard_json(dir / "scorecard.json", results);
    files.push_back(dir / "scorecard.json");
    // long-format context table, one row per (check, key): plot-ready
    {
      std::ofstream ctx(dir / "context.csv", std::ios::binary);
      ctx << "check,key,value\n";
      for (const auto& r : results)
        for (const auto& [k, v] : r.context)
          ctx << r.name << ',' << k << ',' << io::format_double(v) << '\n';
      files.push_back(dir / "context.csv");
    }
    io::write_manifest(dir, files,
                       {{"command", "verify"}, {"suite", suite}});
  }
  return all_passed ? kExitOk : kExitCheckFailure;
}

int cmd_sweep(const cli::ExperimentConfig& base, const std::string& axis,
              const std::vector<std::string>& values, int jobs,
              const std::string& out_root) {
  if (values.empty()) throw ConfigError("sweep: no values given");
  const fs::path root = resolve_out(out_root.empty() ? base.out : out_root);
  fs::create_directories(root);

  auto run_point = [&](const std::string& value) {
    cli::ExperimentConfig cfg = base;
    cfg.set(axis, value);
    cfg.out = (root / (axis + "=" + value)).string();
    const evolve::RunReport report = run_configured(cfg);
    write_run_outputs(cfg.out, report, cfg);
  };

  if (jobs <= 1) {
    for (const auto& v : values) run_point(v);
  } else {
    std::vector<std::future<void>> futures;
    std::size_t next = 0;
    while (next < values.size()) {
      futures.clear();
      for (int j = 0; j < jobs && next < values.size(); ++j, ++next)
        futures.push_back(
            std::async(std::launch::async, run_point, values[next]));
      for (auto& f : futures) f.get();
    }
  }

  // sweep-level manifest covering every file written below the root
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
      files.push_back(entry.path());
  std::vector<std::pair<std::string, std::string>> echo = base.echo();
  echo.emplace_back("sweep_axis", axis);
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i)
    joined += (i ? "," : "") + values[i];
  echo.emplace_back("sweep_values", joined);
  io::write_manifest(root, files, echo);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the relativistic heat equation"};
  app.require_subcommand(1);

  std::string config_path, out_flag, method_flag, suite = "all";
  std::vector<std::string> sets;
  double c_flag = -1.0, t_end_flag = -1.0;
  int jobs = 1;
  std::string axis;
  std::vector<std::string> values;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    cmd->add_option("--set", sets, "override: key=value (repeatable)");
    cmd->add_option("--out", out_flag, "output directory");
    cmd->add_option("--c", c_flag, "light speed override");
    cmd->add_option("--t-end", t_end_flag, "final time override");
    cmd->add_option("--method", method_flag, "explicit|implicit");
  };

  CLI::App* evolve_cmd = app.add_subcommand("evolve", "run one evolution");
  add_common(evolve_cmd);
  CLI::App* stationary_cmd =
      app.add_subcommand("stationary", "solve the stationary problem");
  add_common(stationary_cmd);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite, "suite name or 'all'");
  verify_cmd->add_option("--out", out_flag, "scorecard output directory");
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run evolve across one config axis");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--axis", axis, "config key to sweep")->required();
  sweep_cmd->add_option("--values", values, "comma list of axis values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--jobs", jobs, "concurrent sweep points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  }

  try {
    cli::ExperimentConfig cfg;
    if (!config_path.empty()) cli::apply_file(cfg, config_path);
    apply_overrides(cfg, sets);
    if (!out_flag.empty()) cfg.set("out", out_flag);
    if (c_flag > 0.0) cfg.set("c", io::format_double(c_flag));
    if (t_end_flag > 0.0) cfg.set("t_end", io::format_double(t_end_flag));
    if (!method_flag.empty()) cfg.set("method", method_flag);

    if (evolve_cmd->parsed()) return cmd_evolve(cfg);
    if (stationary_cmd->parsed()) return cmd_stationary(cfg);
    if (verify_cmd->parsed()) return cmd_verify(suite, out_flag);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, axis, values, jobs, out_flag);
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what()
              << " (final residual " << e.final_residual << ")\n";
    return kExitSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
}
