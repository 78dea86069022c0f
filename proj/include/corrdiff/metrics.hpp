#pragma once

#include <vector>

#include "corrdiff/spectra.hpp"

namespace corrdiff {

/// (max - min) / (max + min) over |q| <= half_range; 0 for an all-zero window.
double visibility(const RateProfile& p, double half_range);

struct Peak {
  double q = 0.0;
  double value = 0.0;
  std::size_t index = 0;
};

/// Argmax of each cell [m*spacing - spacing/2, m*spacing + spacing/2) that lies
/// fully inside |q| <= q_max, ordered by q.
std::vector<Peak> principal_maxima(const RateProfile& p, double spacing, double q_max);

/// Differences between adjacent peak positions.
std::vector<double> peak_spacings(const std::vector<Peak>& peaks);

/// Full width at half maximum of the envelope through the peak heights, with the
/// envelope linearly interpolated between peaks. NaN when it never falls below half.
double envelope_fwhm(const std::vector<Peak>& peaks);

/// Same profile on the axis scaled by `factor` (e.g. 2 to read R(q, -q) as a function of 2q).
RateProfile rescaled_axis(RateProfile p, double factor);

/// max |a - b| over a common axis (sizes must match).
double max_abs_difference(const RateProfile& a, const RateProfile& b);

}  // namespace corrdiff
