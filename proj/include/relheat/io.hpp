#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "relheat/check.hpp"
#include "relheat/evolve.hpp"
#include "relheat/grid.hpp"

// File formats: CSV snapshots/series, JSON reports, scorecards, and the
// output manifest. All floating-point text uses 17 significant digits so
// identical runs produce byte-identical files.
namespace relheat::io {

std::string format_double(double v);  // %.17g

// Field snapshot CSV: header "x,value" (1D) or "x,y,value" (2D), one row
// per cell in row-major order.
void write_field_csv(const std::filesystem::path& path,
                     const grid::ScalarField& field);
grid::ScalarField read_field_csv(const std::filesystem::path& path);

// Time-series CSV: "t,mass,entropy,max,min,front".
void write_series_csv(const std::filesystem::path& path,
                      const evolve::RunReport& report);

// Report JSON with series arrays and the snapshot CSV paths it references.
void write_report_json(const std::filesystem::path& path,
                       const evolve::RunReport& report,
                       const std::vector<std::string>& snapshot_files);

void write_scorecard_json(const std::filesystem::path& path,
                          const std::vector<CheckResult>& results);

std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_file(const std::filesystem::path& path);

// Manifest: every file under the run directory with its content hash, plus
// the generating configuration echoed back.
void write_manifest(const std::filesystem::path& dir,
                    const std::vector<std::filesystem::path>& files,
                    const std::vector<std::pair<std::string, std::string>>& config_echo);

}  // namespace relheat::io
