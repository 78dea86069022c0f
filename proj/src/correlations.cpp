#include "corrdiff/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "corrdiff/error.hpp"
#include "corrdiff/transform.hpp"

namespace corrdiff {

WidthConvention parse_width_convention(const std::string& name) {
  if (name == "fwhm") return WidthConvention::Fwhm;
  if (name == "e2_halfwidth") return WidthConvention::E2HalfWidth;
  throw Error(ErrorCode::InvalidArgument, "unknown width convention '" + name + "'");
}

const char* to_string(WidthConvention c) {
  return c == WidthConvention::Fwhm ? "fwhm" : "e2_halfwidth";
}

CorrelationKernel CorrelationKernel::constant() { return CorrelationKernel{}; }

CorrelationKernel CorrelationKernel::dirac() {
  CorrelationKernel k;
  k.kind_ = Kind::Dirac;
  return k;
}

CorrelationKernel CorrelationKernel::gaussian(double r, double d_ref_um, WidthConvention convention) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "Gaussian r must be positive");
  if (!(d_ref_um > 0.0)) throw Error(ErrorCode::InvalidArgument, "Gaussian d_ref must be positive");
  CorrelationKernel k;
  k.kind_ = Kind::Gaussian;
  k.r_ = r;
  k.d_ref_ = d_ref_um;
  k.convention_ = convention;
  const double width = r * d_ref_um;
  k.scale_ = convention == WidthConvention::Fwhm ? width / (2.0 * std::sqrt(std::log(2.0)))
                                                 : width / std::sqrt(2.0);
  return k;
}

CorrelationKernel CorrelationKernel::sampled(double step_um, std::vector<double> values) {
  if (!(step_um > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel step must be positive");
  if (values.empty() || !(values[0] > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sampled kernel needs G(0) > 0");
  }
  const double g0 = values[0];
  for (double& v : values) {
    if (!std::isfinite(v) || v < 0.0 || v > g0) {
      throw Error(ErrorCode::InvalidArgument, "sampled kernel values must satisfy 0 <= G <= G(0)");
    }
    v /= g0;
  }
  CorrelationKernel k;
  k.kind_ = Kind::SampledSymmetric;
  k.step_ = step_um;
  k.values_ = std::move(values);
  return k;
}

CorrelationKernel CorrelationKernel::with_r(double r) const {
  if (kind_ != Kind::Gaussian) throw Error(ErrorCode::InvalidArgument, "with_r needs a Gaussian kernel");
  return gaussian(r, d_ref_, convention_);
}

std::string CorrelationKernel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: os << "constant"; break;
    case Kind::Dirac: os << "dirac"; break;
    case Kind::Gaussian:
      os << "gaussian(r=" << r_ << ", d_ref_um=" << d_ref_ << ", convention=" << to_string(convention_)
         << ")";
      break;
    case Kind::SampledSymmetric:
      os << "sampled(step_um=" << step_ << ", points=" << values_.size() << ")";
      break;
  }
  return os.str();
}

double correlation_eval(const CorrelationKernel& kernel, double dx) {
  switch (kernel.kind()) {
    case CorrelationKernel::Kind::Constant:
      return 1.0;
    case CorrelationKernel::Kind::Dirac:
      throw Error(ErrorCode::AnalyticKernel,
                  "Dirac kernel has no pointwise value; use the single-integral closed form");
    case CorrelationKernel::Kind::Gaussian: {
      const double t = dx / kernel.gaussian_scale();
      return std::exp(-t * t);
    }
    case CorrelationKernel::Kind::SampledSymmetric: {
      const auto& v = kernel.sample_values();
      const double pos = std::abs(dx) / kernel.sample_step();
      // The table is followed by an implied zero one step past its end.
      const double m = std::floor(pos);
      if (m >= static_cast<double>(v.size())) return 0.0;
      const auto j = static_cast<std::size_t>(m);
      const double t = pos - m;
      const double next = j + 1 < v.size() ? v[j + 1] : 0.0;
      return (1.0 - t) * v[j] + t * next;
    }
  }
  return 0.0;
}

double correlation_fourier(const CorrelationKernel& kernel, double kappa) {
  switch (kernel.kind()) {
    case CorrelationKernel::Kind::Constant:
      throw Error(ErrorCode::AnalyticKernel, "constant kernel has a delta image");
    case CorrelationKernel::Kind::Dirac:
      return 1.0 / std::sqrt(kTwoPi);
    case CorrelationKernel::Kind::Gaussian: {
      const double a = kernel.gaussian_scale();
      const double t = 0.5 * kappa * a;
      return a / std::sqrt(2.0) * std::exp(-t * t);
    }
    case CorrelationKernel::Kind::SampledSymmetric: {
      // Hat-function interpolant: h * sinc^2(kappa h / 2) * (G0 + 2 sum G_m cos(kappa m h)).
      const auto& v = kernel.sample_values();
      const double h = kernel.sample_step();
      double sum = v[0];
      for (std::size_t m = 1; m < v.size(); ++m) sum += 2.0 * v[m] * std::cos(kappa * h * static_cast<double>(m));
      const double f = sinc(0.5 * kappa * h);
      return h * f * f * sum / std::sqrt(kTwoPi);
    }
  }
  return 0.0;
}

CorrelationKernel load_sampled_kernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open kernel samples " + path);
  std::map<double, double> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double dx = 0.0, g = 0.0;
    if (!(ls >> dx >> g)) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorCode::ConfigParse, "bad kernel sample line: " + line);
    }
    first = false;
    rows[dx] = g;
  }
  std::vector<std::pair<double, double>> pos;
  for (const auto& [dx, g] : rows) {
    if (dx < 0.0) {
      const auto it = rows.find(-dx);
      if (it == rows.end() || std::abs(it->second - g) > 1e-12 * std::max(1.0, std::abs(g))) {
        throw Error(ErrorCode::InvalidArgument, "sampled kernel is not symmetric");
      }
    } else {
      pos.emplace_back(dx, g);
    }
  }
  if (pos.size() < 2 || pos.front().first != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "sampled kernel needs rows starting at dx = 0");
  }
  const double step = pos[1].first;
  std::vector<double> values;
  for (std::size_t m = 0; m < pos.size(); ++m) {
    if (std::abs(pos[m].first - static_cast<double>(m) * step) > 1e-9 * step * static_cast<double>(pos.size())) {
      throw Error(ErrorCode::NonUniformLattice, "sampled kernel spacing must be uniform");
    }
    values.push_back(pos[m].second);
  }
  return CorrelationKernel::sampled(step, std::move(values));
}

}  // namespace corrdiff
