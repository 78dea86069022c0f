#include "corrdiff/apertures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "corrdiff/error.hpp"
#include "corrdiff/transform.hpp"

namespace corrdiff {

namespace {

// sin(N*u)/sin(u), continued through u = m*pi.
double grating_factor(int n, double u) {
  const double m = std::nearbyint(u / kPi);
  const double delta = u - m * kPi;
  // sin(N(m*pi + delta)) / sin(m*pi + delta) = (-1)^{m(N-1)} sin(N delta) / sin(delta)
  const bool flip = (static_cast<long long>(std::abs(m)) % 2 == 1) && (n % 2 == 0);
  double ratio;
  if (delta == 0.0) {
    ratio = n;
  } else if (std::abs(delta) < 1e-6) {
    // sin(N d)/sin(d) = N (1 - (N^2 - 1) d^2 / 6) + O(d^4)
    ratio = n * (1.0 - (static_cast<double>(n) * n - 1.0) * delta * delta / 6.0);
  } else {
    ratio = std::sin(n * delta) / std::sin(delta);
  }
  return flip ? -ratio : ratio;
}

}  // namespace

void validate(const GratingSpec& spec) {
  if (!(spec.slit_width_um > 0.0) || !(spec.slit_width_um < spec.period_um) ||
      !std::isfinite(spec.period_um)) {
    throw Error(ErrorCode::InvalidArgument, "grating requires 0 < s < d");
  }
  if (spec.slit_count < 1) throw Error(ErrorCode::InvalidArgument, "grating requires N >= 1");
  if (!(spec.amplitude >= 0.0) || spec.amplitude > kMaxTransmittance) {
    throw Error(ErrorCode::InvalidArgument, "grating amplitude must lie in [0, 1]");
  }
}

double slit_center(const GratingSpec& spec, int k) {
  return (k - 0.5 * (spec.slit_count - 1)) * spec.period_um;
}

double grating_extent(const GratingSpec& spec) {
  return (spec.slit_count - 1) * spec.period_um + spec.slit_width_um;
}

cplx grating_fourier(const GratingSpec& spec, double q) {
  const double d = spec.period_um;
  const double s = spec.slit_width_um;
  const double array = grating_factor(spec.slit_count, 0.5 * d * q);
  const double slit = s * sinc(0.5 * s * q);  // sin(sq/2)/(q/2)
  return spec.amplitude / std::sqrt(kTwoPi) * array * slit;
}

ApertureProfile ApertureProfile::grating(const GratingSpec& spec) {
  validate(spec);
  return ApertureProfile(spec, 0.5 * grating_extent(spec));
}

ApertureProfile ApertureProfile::sampled(std::vector<double> x_um, std::vector<cplx> amplitude) {
  if (x_um.size() != amplitude.size() || x_um.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "sampled aperture needs >= 2 (x, A) pairs");
  }
  for (std::size_t j = 0; j < x_um.size(); ++j) {
    if (!std::isfinite(x_um[j]) || !std::isfinite(amplitude[j].real()) ||
        !std::isfinite(amplitude[j].imag())) {
      throw Error(ErrorCode::InvalidArgument, "sampled aperture has non-finite entries");
    }
    if (j > 0 && !(x_um[j] > x_um[j - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sampled aperture x must be strictly increasing");
    }
    if (std::abs(amplitude[j]) > kMaxTransmittance * (1.0 + 1e-12)) {
      throw Error(ErrorCode::InvalidArgument, "sampled aperture |A| exceeds 1");
    }
  }
  double halfwidth = 0.0;
  for (std::size_t j = 0; j < x_um.size(); ++j) {
    if (amplitude[j] != cplx{}) {
      // Linear interpolation reaches zero at the neighbouring samples.
      const double lo = j > 0 ? x_um[j - 1] : x_um[j];
      const double hi = j + 1 < x_um.size() ? x_um[j + 1] : x_um[j];
      halfwidth = std::max({halfwidth, std::abs(lo), std::abs(hi)});
    }
  }
  return ApertureProfile(Sampled{std::move(x_um), std::move(amplitude)}, halfwidth);
}

cplx ApertureProfile::operator()(double x) const {
  if (const auto* g = grating_spec()) {
    const double half = 0.5 * g->slit_width_um;
    for (int k = 0; k < g->slit_count; ++k) {
      const double dist = std::abs(x - slit_center(*g, k));
      if (dist < half) return g->amplitude;
      if (dist == half) return 0.5 * g->amplitude;
    }
    return 0.0;
  }
  const auto& s = std::get<Sampled>(kind_);
  if (x < s.x_um.front() || x > s.x_um.back()) return 0.0;
  const auto it = std::upper_bound(s.x_um.begin(), s.x_um.end(), x);
  if (it == s.x_um.end()) return s.amplitude.back();
  const auto j = static_cast<std::size_t>(it - s.x_um.begin());
  const double t = (x - s.x_um[j - 1]) / (s.x_um[j] - s.x_um[j - 1]);
  return (1.0 - t) * s.amplitude[j - 1] + t * s.amplitude[j];
}

std::optional<double> ApertureProfile::feature_size() const {
  if (const auto* g = grating_spec()) return g->slit_width_um;
  return std::nullopt;
}

std::optional<double> ApertureProfile::period() const {
  if (const auto* g = grating_spec()) return g->period_um;
  return std::nullopt;
}

std::vector<cplx> ApertureProfile::sample(const XLattice& x) const {
  std::vector<cplx> out(x.size);
  if (const auto* g = grating_spec()) {
    const double h = x.step;
    const double half = 0.5 * g->slit_width_um;
    for (int k = 0; k < g->slit_count; ++k) {
      const double lo = slit_center(*g, k) - half;
      const double hi = slit_center(*g, k) + half;
      const double j_lo = std::floor((lo - x.origin) / h - 0.5);
      const double j_hi = std::ceil((hi - x.origin) / h + 0.5);
      for (double jd = std::max(0.0, j_lo); jd <= j_hi && jd < static_cast<double>(x.size); jd += 1.0) {
        const auto j = static_cast<std::size_t>(jd);
        const double xc = x.at(j);
        double frac = (std::min(hi, xc + 0.5 * h) - std::max(lo, xc - 0.5 * h)) / h;
        if (frac <= 1e-9) continue;
        if (frac >= 1.0 - 1e-9) frac = 1.0;
        if (std::abs(frac - 0.5) < 1e-9) frac = 0.5;
        out[j] += g->amplitude * frac;
      }
    }
    return out;
  }
  for (std::size_t j = 0; j < x.size; ++j) out[j] = (*this)(x.at(j));
  return out;
}

std::string ApertureProfile::describe() const {
  std::ostringstream os;
  if (const auto* g = grating_spec()) {
    os << "grating(A0=" << g->amplitude << ", d_um=" << g->period_um << ", s_um=" << g->slit_width_um
       << ", N=" << g->slit_count << ")";
  } else {
    const auto& s = std::get<Sampled>(kind_);
    os << "sampled(points=" << s.x_um.size() << ", support_halfwidth_um=" << support_halfwidth_ << ")";
  }
  return os.str();
}

cplx aperture_eval(const ApertureProfile& profile, double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "aperture_eval needs finite x");
  return profile(x);
}

ApertureProfile load_sampled_aperture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open aperture samples " + path);
  std::vector<double> xs;
  std::vector<cplx> amps;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x = 0.0, re = 0.0, im = 0.0;
    if (!(ls >> x >> re)) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw Error(ErrorCode::ConfigParse, "bad aperture sample line: " + line);
    }
    first = false;
    if (!(ls >> im)) im = 0.0;
    xs.push_back(x);
    amps.emplace_back(re, im);
  }
  return ApertureProfile::sampled(std::move(xs), std::move(amps));
}

}  // namespace corrdiff
