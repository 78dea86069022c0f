#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace corrdiff {

struct OutputRecord {
  std::string file;  ///< relative to the manifest directory
  std::string kind;  ///< map | profile | coherence | image | plot
  std::string sha256;
  std::size_t rows = 0;  ///< data rows (CSV only)
};

struct OracleRecord {
  std::string name;
  double max_rel = 0.0;
  double max_abs = 0.0;
  bool passed = true;
};

struct RunManifest {
  std::string tool = "corrdiff";
  std::string version;
  std::string scenario;
  std::string geometry;
  std::string config_path;
  std::string config_sha256;
  std::string aperture;
  std::string kernel;
  std::string grid;
  std::string normalization;
  std::vector<OutputRecord> outputs;
  std::vector<std::string> warnings;
  std::vector<OracleRecord> oracle;
  double wall_time_s = 0.0;
};

void save_manifest(const std::filesystem::path& path, const RunManifest& m);
/// Throws Io when unreadable and SchemaMismatch when required fields are missing.
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace corrdiff
