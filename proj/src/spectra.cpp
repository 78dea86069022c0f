#include "corrdiff/spectra.hpp"

#include <algorithm>

#include "corrdiff/error.hpp"

namespace corrdiff {

namespace {
bool scale_to_peak(std::vector<double>& v) {
  const double peak = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (!(peak > 0.0)) return false;
  for (double& x : v) x /= peak;
  return true;
}
}  // namespace

const char* to_string(Normalization n) { return n == Normalization::Raw ? "raw" : "peak"; }

RateMap RateMap::restricted(const QLattice& window) const {
  if (!rows.contains(window.first) || !rows.contains(window.last()) || !cols.contains(window.first) ||
      !cols.contains(window.last())) {
    throw Error(ErrorCode::InvalidArgument, "restriction window outside the map");
  }
  RateMap out;
  out.rows = window;
  out.cols = window;
  out.normalization = normalization;
  out.warnings = warnings;
  out.values.resize(window.size * window.size);
  const std::size_t r0 = rows.position(window.first);
  const std::size_t c0 = cols.position(window.first);
  for (std::size_t i = 0; i < window.size; ++i) {
    for (std::size_t j = 0; j < window.size; ++j) out.values[i * window.size + j] = at(r0 + i, c0 + j);
  }
  return out;
}

RateMap peak_normalized(RateMap map) {
  if (scale_to_peak(map.values)) map.normalization = Normalization::PeakNormalized;
  return map;
}

RateProfile peak_normalized(RateProfile profile) {
  if (scale_to_peak(profile.values)) profile.normalization = Normalization::PeakNormalized;
  return profile;
}

}  // namespace corrdiff
