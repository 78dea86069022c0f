#pragma once

#include <string>
#include <vector>

#include "corrdiff/lattice.hpp"

namespace corrdiff {

enum class Normalization { Raw, PeakNormalized };
const char* to_string(Normalization n);

struct Provenance {
  std::string aperture;
  std::string kernel;
  std::string geometry;
  std::string grid;
  std::string method;
};

/// Complex F(q, q') on rows x cols, row-major.
struct JointSpectrum {
  QLattice rows;
  QLattice cols;
  std::vector<cplx> values;
  Provenance provenance;

  cplx at(std::size_t i, std::size_t j) const { return values[i * cols.size + j]; }
  cplx& at(std::size_t i, std::size_t j) { return values[i * cols.size + j]; }
};

/// Nonnegative R2(q, q') on rows x cols, row-major.
struct RateMap {
  QLattice rows;
  QLattice cols;
  std::vector<double> values;
  Normalization normalization = Normalization::Raw;
  std::vector<std::string> warnings;

  double at(std::size_t i, std::size_t j) const { return values[i * cols.size + j]; }
  /// Square sub-map on `window`, which must sit inside both rows and cols.
  RateMap restricted(const QLattice& window) const;
};

/// A 1D cut or marginal. `axis` holds the profile coordinate in rad/um.
struct RateProfile {
  std::vector<double> axis;
  std::vector<double> values;
  Normalization normalization = Normalization::Raw;
  std::vector<std::string> warnings;
  /// Largest share of a row integral carried by the boundary columns (marginals only).
  double truncation_fraction = 0.0;

  double step() const { return axis.size() > 1 ? axis[1] - axis[0] : 0.0; }
};

/// Divides by the maximum; an all-zero input is returned unchanged and stays Raw.
RateMap peak_normalized(RateMap map);
RateProfile peak_normalized(RateProfile profile);

}  // namespace corrdiff
