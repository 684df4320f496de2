// End-to-end tests of the command-line binary (path from RELHEAT_CLI).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "relheat/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("RELHEAT_CLI");
  REQUIRE_MESSAGE(p != nullptr, "RELHEAT_CLI must point at the binary");
  return p;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd =
      cli_path() + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path temp_dir(const char* tag) {
  const fs::path p =
      fs::temp_directory_path() / (std::string("relheat_cli_") + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_config(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  out << body;
}

const char* kSmallRun = R"(# small deterministic run
[run]
equation = relativistic
dim = 1
n = 64
extent = 0,1
c = 1
bc = noflux
ic = gaussian-bump:0.5,0.5,0.1,0.2
method = explicit
t_end = 0.002
snapshot_times = 0.001
)";

}  // namespace

TEST_CASE("evolve runs and produces a complete manifest") {
  const auto dir = temp_dir("evolve");
  write_config(dir / "run.cfg", kSmallRun);
  const int rc = run("evolve --config " + (dir / "run.cfg").string() +
                         " --out " + (dir / "out").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "series.csv"));
  CHECK(fs::exists(dir / "out" / "report.json"));
  CHECK(fs::exists(dir / "out" / "manifest.json"));

  // manifest completeness: every file present and hashes match
  const auto manifest =
      nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  std::size_t listed = 0;
  for (const auto& e : manifest["files"]) {
    const fs::path p = dir / "out" / e["path"].get<std::string>();
    CHECK(fs::exists(p));
    CHECK(relheat::io::sha256_file(p) == e["sha256"].get<std::string>());
    ++listed;
  }
  std::size_t on_disk = 0;
  for (const auto& e : fs::directory_iterator(dir / "out"))
    if (e.is_regular_file() && e.path().filename() != "manifest.json")
      ++on_disk;
  CHECK(listed == on_disk);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  const auto dir = temp_dir("determinism");
  write_config(dir / "run.cfg", kSmallRun);
  const std::string base = "evolve --config " + (dir / "run.cfg").string();
  CHECK(run(base + " --out " + (dir / "a").string(), dir / "la.txt") == 0);
  CHECK(run(base + " --out " + (dir / "b").string(), dir / "lb.txt") == 0);
  CHECK(slurp(dir / "a" / "series.csv") == slurp(dir / "b" / "series.csv"));
  CHECK(slurp(dir / "a" / "snap_000.csv") ==
        slurp(dir / "b" / "snap_000.csv"));
  CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
}

TEST_CASE("invalid configuration exits 2 naming the field") {
  const auto dir = temp_dir("badcfg");
  write_config(dir / "bad.cfg", "c = -1\n");
  CHECK(run("evolve --config " + (dir / "bad.cfg").string(), dir / "l1.txt") ==
        2);
  CHECK(slurp(dir / "l1.txt").find("'c'") != std::string::npos);

  write_config(dir / "unknown.cfg", "not_a_key = 3\n");
  CHECK(run("evolve --config " + (dir / "unknown.cfg").string(),
            dir / "l2.txt") == 2);
  CHECK(slurp(dir / "l2.txt").find("not_a_key") != std::string::npos);

  write_config(dir / "dup.cfg", "c = 1\nc = 2\n");
  CHECK(run("evolve --config " + (dir / "dup.cfg").string(), dir / "l3.txt") ==
        2);

  // missing ic file
  write_config(dir / "missing.cfg", "ic = csv:/nonexistent/u0.csv\n");
  CHECK(run("evolve --config " + (dir / "missing.cfg").string(),
            dir / "l4.txt") == 2);
}

TEST_CASE("flag overrides beat config file keys") {
  const auto dir = temp_dir("override");
  write_config(dir / "run.cfg", kSmallRun);
  const int rc = run("evolve --config " + (dir / "run.cfg").string() +
                         " --set t_end=0.001 --out " + (dir / "out").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  const auto times = report["times"];
  CHECK(times.back().get<double>() == doctest::Approx(0.001));
}

TEST_CASE("stationary command writes solutions and a convergence log") {
  const auto dir = temp_dir("stationary");
  write_config(dir / "st.cfg",
               "n = 64\nextent = 0,1\nbc = dirichlet:0,-0.5\n");
  const int rc = run("stationary --config " + (dir / "st.cfg").string() +
                         " --out " + (dir / "out").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "solution_w.csv"));
  CHECK(fs::exists(dir / "out" / "solution_u.csv"));
  const auto log = nlohmann::json::parse(slurp(dir / "out" / "convergence.json"));
  CHECK(log.size() >= 1);
  CHECK(log.back()["residual"].get<double>() <= 1e-10);
}

TEST_CASE("verify core suite passes quickly") {
  const auto dir = temp_dir("verify");
  const int rc = run("verify core --out " + (dir / "score").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "score" / "scorecard.json"));
  const auto score =
      nlohmann::json::parse(slurp(dir / "score" / "scorecard.json"));
  CHECK(score.size() >= 4);
  for (const auto& r : score)
    if (!r["exploratory"].get<bool>()) CHECK(r["passed"].get<bool>());
}

TEST_CASE("unknown suite exits 2") {
  const auto dir = temp_dir("badsuite");
  CHECK(run("verify bogus", dir / "log.txt") == 2);
}

TEST_CASE("sweep writes per-point directories and a root manifest") {
  const auto dir = temp_dir("sweep");
  write_config(dir / "run.cfg", kSmallRun);
  const int rc = run("sweep --config " + (dir / "run.cfg").string() +
                         " --axis c --values 1,2 --jobs 2 --out " +
                         (dir / "sw").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "sw" / "c=1" / "series.csv"));
  CHECK(fs::exists(dir / "sw" / "c=2" / "series.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "sw" / "manifest.json"));
  CHECK(manifest["config"]["sweep_axis"] == "c");
  bool saw_point_file = false;
  for (const auto& e : manifest["files"]) {
    const std::string p = e["path"].get<std::string>();
    if (p.rfind("c=1/", 0) == 0) saw_point_file = true;
  }
  CHECK(saw_point_file);
}

TEST_CASE("RELHEAT_OUTPUT_ROOT reroots relative output directories") {
  const auto dir = temp_dir("envroot");
  write_config(dir / "run.cfg", kSmallRun);
  const std::string cmd = "RELHEAT_OUTPUT_ROOT=" + (dir / "root").string() +
                          " " + cli_path() + " evolve --config " +
                          (dir / "run.cfg").string() + " --out sub >" +
                          (dir / "log.txt").string() + " 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(dir / "root" / "sub" / "series.csv"));
}

TEST_CASE("custom CSV initial conditions round-trip through the CLI") {
  const auto dir = temp_dir("csvic");
  {
    const auto g = relheat::grid::Grid::make_1d(64, 0.0, 1.0);
    const auto f = relheat::grid::ScalarField::from_function(
        g, [](double x) { return 0.3 + 0.4 * std::exp(-30.0 * (x - 0.5) * (x - 0.5)); });
    relheat::io::write_field_csv(dir / "u0.csv", f);
  }
  write_config(dir / "run.cfg",
               "n = 64\nextent = 0,1\nic = csv:" + (dir / "u0.csv").string() +
                   "\nt_end = 0.001\nsnapshot_times = 0\n");
  const int rc = run("evolve --config " + (dir / "run.cfg").string() +
                         " --out " + (dir / "out").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  // the t = 0 snapshot reproduces the initial-condition file byte for byte
  CHECK(slurp(dir / "out" / "snap_000.csv") == slurp(dir / "u0.csv"));
}

TEST_CASE("verify all passes on the default desk-scale suite") {
  const auto dir = temp_dir("verifyall");
  const int rc = run("verify all --out " + (dir / "score").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  CHECK(slurp(dir / "log.txt").find("all non-exploratory passed") !=
        std::string::npos);
}

TEST_CASE("telegraph equation is reachable from the config surface") {
  const auto dir = temp_dir("telegraph");
  write_config(dir / "tg.cfg",
               "equation = telegraph\nn = 128\nextent = -2,2\n"
               "ic = two-pulses:0.5,1.2,0.3\nt_end = 0.4\nbc = noflux\n");
  const int rc = run("evolve --config " + (dir / "tg.cfg").string() +
                         " --out " + (dir / "out").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["equation"] == "telegraph");
}

TEST_CASE("2D runs work through the config surface") {
  const auto dir = temp_dir("twodee");
  write_config(dir / "run2d.cfg",
               "dim = 2\nn = 24\nextent = 0,1\nbc = dirichlet:0.2\n"
               "ic = gaussian-bump:0.5,0.5,0.15,0.2\nt_end = 0.002\n"
               "snapshot_times = 0\n");
  const int rc = run("evolve --config " + (dir / "run2d.cfg").string() +
                         " --out " + (dir / "out").string(),
                     dir / "log.txt");
  CHECK(rc == 0);
  // 2D snapshots carry the x,y,value header
  CHECK(slurp(dir / "out" / "snap_000.csv").rfind("x,y,value\n", 0) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(report["grid"]["dim"] == 2);
}
