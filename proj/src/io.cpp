#include "relheat/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace relheat::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const fs::path& path, const grid::ScalarField& field) {
  const grid::Grid& g = field.grid;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  if (g.dim == 1) {
    out << "x,value\n";
    for (int i = 0; i < g.n[0]; ++i)
      out << format_double(g.center(0, i)) << ','
          << format_double(field.values[i]) << '\n';
  } else {
    out << "x,y,value\n";
    for (int iy = 0; iy < g.n[1]; ++iy)
      for (int ix = 0; ix < g.n[0]; ++ix)
        out << format_double(g.center(0, ix)) << ','
            << format_double(g.center(1, iy)) << ','
            << format_double(field.at(ix, iy)) << '\n';
  }
}

grid::ScalarField read_field_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field CSV " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty field CSV");
  // strip potential \r
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const bool is2d = header == "x,y,value";
  if (!is2d && header != "x,value")
    throw ConfigError("field CSV must start with 'x,value' or 'x,y,value'");

  std::vector<double> xs, ys, vals;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != (is2d ? 3u : 2u))
      throw ConfigError("malformed field CSV row: " + line);
    xs.push_back(row[0]);
    if (is2d) ys.push_back(row[1]);
    vals.push_back(row.back());
  }
  if (vals.size() < 4) throw ConfigError("field CSV has too few cells");

  auto axis_from_centers = [](const std::vector<double>& centers_sorted) {
    std::vector<double> uniq;
    for (double c : centers_sorted)
      if (uniq.empty() || std::abs(c - uniq.back()) > 1e-12) uniq.push_back(c);
    const int n = static_cast<int>(uniq.size());
    if (n < 2) throw ConfigError("field CSV axis needs >= 2 distinct centers");
    const double h = (uniq.back() - uniq.front()) / (n - 1);
    return std::tuple<int, double, double>{n, uniq.front() - 0.5 * h,
                                           uniq.back() + 0.5 * h};
  };

  if (!is2d) {
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    auto [n, lo, hi] = axis_from_centers(sorted);
    if (static_cast<std::size_t>(n) != vals.size())
      throw ConfigError("field CSV is not a full 1D grid");
    grid::ScalarField f = grid::ScalarField::zeros(grid::Grid::make_1d(n, lo, hi));
    f.values = vals;
    f.validate();
    return f;
  }
  auto sx = xs, sy = ys;
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  auto [nx, lox, hix] = axis_from_centers(sx);
  auto [ny, loy, hiy] = axis_from_centers(sy);
  if (static_cast<std::size_t>(nx) * ny != vals.size())
    throw ConfigError("field CSV is not a full 2D grid");
  grid::ScalarField f = grid::ScalarField::zeros(
      grid::Grid::make_2d(nx, ny, lox, hix, loy, hiy));
  f.values = vals;  // rows were written row-major
  f.validate();
  return f;
}

void write_series_csv(const fs::path& path, const evolve::RunReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "t,mass,entropy,max,min,front\n";
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    out << format_double(report.times[i]) << ','
        << format_double(report.mass_series[i]) << ','
        << format_double(report.entropy_series[i]) << ','
        << format_double(report.max_series[i]) << ','
        << format_double(report.min_series[i]) << ','
        << format_double(report.front_position_series[i]) << '\n';
  }
}

namespace {

json grid_to_json(const grid::Grid& g) {
  json j;
  j["dim"] = g.dim;
  j["n"] = g.dim == 1 ? json::array({g.n[0]}) : json::array({g.n[0], g.n[1]});
  j["lo"] = g.dim == 1 ? json::array({g.lo[0]}) : json::array({g.lo[0], g.lo[1]});
  j["hi"] = g.dim == 1 ? json::array({g.hi[0]}) : json::array({g.hi[0], g.hi[1]});
  return j;
}

}  // namespace

void write_report_json(const fs::path& path, const evolve::RunReport& report,
                       const std::vector<std::string>& snapshot_files) {
  json j;
  j["equation"] = evolve::to_string(report.equation_tag);
  j["c"] = report.params.c;
  j["grid"] = grid_to_json(report.grid);
  j["dt"] = report.dt;
  j["front_threshold"] = report.front_threshold;
  j["clip_count"] = report.clip_count;
  j["times"] = report.times;
  j["mass"] = report.mass_series;
  j["entropy"] = report.entropy_series;
  j["max"] = report.max_series;
  j["min"] = report.min_series;
  j["front"] = report.front_position_series;
  json snaps = json::array();
  for (std::size_t i = 0; i < report.snapshots.size(); ++i) {
    json s;
    s["time"] = report.snapshots[i].first;
    s["csv"] = i < snapshot_files.size() ? snapshot_files[i] : "";
    snaps.push_back(std::move(s));
  }
  j["snapshots"] = std::move(snaps);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << j.dump(2) << '\n';
}

void write_scorecard_json(const fs::path& path,
                          const std::vector<CheckResult>& results) {
  json arr = json::array();
  for (const auto& r : results) {
    json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["violation"] = r.violation;
    j["tolerance"] = r.tolerance;
    j["exploratory"] = r.exploratory;
    j["context"] = r.context;
    arr.push_back(std::move(j));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << arr.dump(2) << '\n';
}

// --- SHA-256 (FIPS 180-4), compact implementation -----------------------

namespace {

struct Sha256 {
  std::uint32_t h[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                        0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  std::uint64_t total = 0;
  unsigned char buf[64];
  std::size_t fill = 0;

  static std::uint32_t rotr(std::uint32_t x, int s) {
    return (x >> s) | (x << (32 - s));
  }

  void block(const unsigned char* p) {
    static const std::uint32_t k[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b,
        0x59f111f1, 0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01,
        0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7,
        0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc,
        0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152,
        0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
        0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
        0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819,
        0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116, 0x1e376c08,
        0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f,
        0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
        0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) |
             (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 =
          rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 =
          rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
                  g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = s0 + maj;
      hh = g; g = f; f = e; e = d + t1;
      d = c; c = b; b = a; a = t1 + t2;
    }
    h[0] += a; h[1] += b; h[2] += c; h[3] += d;
    h[4] += e; h[5] += f; h[6] += g; h[7] += hh;
  }

  void update(const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    total += len;
    while (len > 0) {
      const std::size_t take = std::min(len, sizeof(buf) - fill);
      std::memcpy(buf + fill, p, take);
      fill += take;
      p += take;
      len -= take;
      if (fill == sizeof(buf)) {
        block(buf);
        fill = 0;
      }
    }
  }

  std::string hex() {
    const std::uint64_t bits = total * 8;
    unsigned char pad[72] = {0x80};
    const std::size_t padlen = (fill < 56) ? 56 - fill : 120 - fill;
    update(pad, padlen);
    unsigned char lenb[8];
    for (int i = 0; i < 8; ++i) lenb[i] = (bits >> (56 - 8 * i)) & 0xff;
    update(lenb, 8);
    char out[65];
    for (int i = 0; i < 8; ++i)
      std::snprintf(out + 8 * i, 9, "%08x", h[i]);
    return std::string(out, 64);
  }
};

}  // namespace

std::string sha256_hex(const void* data, std::size_t len) {
  Sha256 s;
  s.update(data, len);
  return s.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Sha256 s;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    s.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return s.hex();
}

void write_manifest(
    const fs::path& dir, const std::vector<fs::path>& files,
    const std::vector<std::pair<std::string, std::string>>& config_echo) {
  std::vector<fs::path> sorted = files;
  std::sort(sorted.begin(), sorted.end());
  json j;
  json arr = json::array();
  for (const auto& f : sorted) {
    json e;
    e["path"] = fs::relative(f, dir).generic_string();
    e["sha256"] = sha256_file(f);
    e["bytes"] = static_cast<std::uint64_t>(fs::file_size(f));
    arr.push_back(std::move(e));
  }
  j["files"] = std::move(arr);
  json cfg = json::object();
  for (const auto& [k, v] : config_echo) cfg[k] = v;
  j["config"] = std::move(cfg);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest");
  out << j.dump(2) << '\n';
}

}  // namespace relheat::io
