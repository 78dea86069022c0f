#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrdiff/apertures.hpp"
#include "corrdiff/correlations.hpp"
#include "corrdiff/grid.hpp"
#include "corrdiff/spectra.hpp"

namespace corrdiff {

enum class Geometry { SameObject, GhostQuantum, GhostClassical, SameObjectClassical };
Geometry parse_geometry(const std::string& name);
const char* to_string(Geometry g);

struct ApertureConfig {
  std::string kind = "grating";  // grating | sampled
  GratingSpec grating;
  std::string samples_csv;       // resolved path when kind == sampled
};

struct CorrelationConfig {
  std::string kind = "constant";  // constant | dirac | gaussian | sampled
  double r = 1.0;
  WidthConvention convention = WidthConvention::Fwhm;
  std::string samples_csv;
};

struct OutputConfig {
  std::optional<std::string> directory;
  bool csv = true;
  bool pgm = true;
  bool svg = true;
  Normalization normalization = Normalization::PeakNormalized;
  bool coherence = false;
};

struct RunConfig {
  std::string name;
  std::string description;
  Geometry geometry = Geometry::SameObject;
  ApertureConfig aperture;
  CorrelationConfig correlation;
  GridOptions grid;
  OutputConfig output;
  std::vector<double> sweep_r;
  /// Arm B for two-arm geometries: open (B = 1) or the same aperture as arm A.
  bool arm_b_open = true;
  std::string source_path;
};

/// Parses an INI scenario. Syntax errors, unknown keys and malformed values throw
/// ConfigParse; violated invariants (missing files, bad ranges) throw ConfigInvariant.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");

ApertureProfile build_aperture(const RunConfig& cfg);
/// `reference_length_um` fixes d for Gaussian kernels.
CorrelationKernel build_kernel(const RunConfig& cfg, double reference_length_um);

}  // namespace corrdiff
