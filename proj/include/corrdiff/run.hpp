#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "corrdiff/config.hpp"
#include "corrdiff/manifest.hpp"

namespace corrdiff {

inline constexpr const char* kOutputRootEnv = "CORRDIFF_OUTPUT_ROOT";
inline constexpr const char* kScenarioDirEnv = "CORRDIFF_SCENARIO_DIR";
inline constexpr std::size_t kOracleLatticePoints = 128;

struct SimulateOptions {
  std::optional<std::filesystem::path> out_dir;
  bool oracle = false;
  /// Overrides grid.n_x.
  std::optional<std::size_t> resolution;
};

struct SimulateResult {
  std::filesystem::path out_dir;
  RunManifest manifest;
  bool oracle_passed = true;
};

/// $CORRDIFF_OUTPUT_ROOT, or ./corrdiff-out.
std::filesystem::path default_output_root();

/// Runs one scenario and writes its outputs plus manifest.json.
SimulateResult simulate(const RunConfig& cfg, const SimulateOptions& options);

struct DiffEntry {
  std::string file;
  double max_abs = 0.0;
  double max_rel = 0.0;
  bool within = true;
};

struct DiffReport {
  std::vector<DiffEntry> entries;
  std::vector<std::string> notes;
  bool within = true;
};

/// Compares the CSV outputs of two manifests. Differing geometry, grid, file set,
/// headers, row counts or axis columns throw SchemaMismatch. A file is within
/// tolerance when its largest absolute value difference is <= tol.
DiffReport diff_manifests(const std::filesystem::path& a, const std::filesystem::path& b, double tol);

struct ScenarioInfo {
  std::string file;
  std::string name;
  std::string geometry;
  std::string description;
};

/// $CORRDIFF_SCENARIO_DIR, or the bundled gallery.
std::filesystem::path scenario_dir();
std::vector<ScenarioInfo> list_scenarios(const std::filesystem::path& dir);

}  // namespace corrdiff
