#include "corrdiff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrdiff/error.hpp"

namespace corrdiff {

double visibility(const RateProfile& p, double half_range) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < p.axis.size(); ++i) {
    if (std::abs(p.axis[i]) > half_range * (1.0 + 1e-12)) continue;
    lo = std::min(lo, p.values[i]);
    hi = std::max(hi, p.values[i]);
  }
  if (!(hi > 0.0)) return 0.0;
  return (hi - lo) / (hi + lo);
}

std::vector<Peak> principal_maxima(const RateProfile& p, double spacing, double q_max) {
  if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "peak spacing must be positive");
  std::vector<Peak> peaks;
  const auto m_max = static_cast<long>(std::floor(q_max / spacing - 0.5 + 1e-9));
  for (long m = -m_max; m <= m_max; ++m) {
    const double lo = (static_cast<double>(m) - 0.5) * spacing;
    const double hi = (static_cast<double>(m) + 0.5) * spacing;
    Peak best{0.0, -1.0, 0};
    for (std::size_t i = 0; i < p.axis.size(); ++i) {
      if (p.axis[i] < lo || p.axis[i] >= hi) continue;
      if (p.values[i] > best.value) best = Peak{p.axis[i], p.values[i], i};
    }
    if (best.value >= 0.0) peaks.push_back(best);
  }
  return peaks;
}

std::vector<double> peak_spacings(const std::vector<Peak>& peaks) {
  std::vector<double> out;
  for (std::size_t i = 1; i < peaks.size(); ++i) out.push_back(peaks[i].q - peaks[i - 1].q);
  return out;
}

double envelope_fwhm(const std::vector<Peak>& peaks) {
  if (peaks.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto top = std::max_element(peaks.begin(), peaks.end(),
                                    [](const Peak& a, const Peak& b) { return a.value < b.value; });
  const double half = 0.5 * top->value;
  const auto c = static_cast<std::size_t>(top - peaks.begin());
  auto crossing = [&](int dir) {
    std::size_t i = c;
    while (true) {
      if ((dir > 0 && i + 1 >= peaks.size()) || (dir < 0 && i == 0)) return std::numeric_limits<double>::quiet_NaN();
      const std::size_t nxt = dir > 0 ? i + 1 : i - 1;
      if (peaks[nxt].value < half) {
        const double t = (peaks[i].value - half) / (peaks[i].value - peaks[nxt].value);
        return peaks[i].q + t * (peaks[nxt].q - peaks[i].q);
      }
      i = nxt;
    }
  };
  return crossing(1) - crossing(-1);
}

RateProfile rescaled_axis(RateProfile p, double factor) {
  for (double& q : p.axis) q *= factor;
  return p;
}

double max_abs_difference(const RateProfile& a, const RateProfile& b) {
  if (a.values.size() != b.values.size()) throw Error(ErrorCode::InvalidArgument, "profile sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace corrdiff
