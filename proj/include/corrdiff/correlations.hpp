#pragma once

#include <string>
#include <vector>

#include "corrdiff/lattice.hpp"

namespace corrdiff {

/// How the dimensionless width r maps to the Gaussian scale a in exp(-(dx/a)^2).
enum class WidthConvention {
  Fwhm,         ///< r*d is the full width at half maximum: a = r*d / (2*sqrt(ln 2)).
  E2HalfWidth,  ///< r*d is the half width at 1/e^2: a = r*d / sqrt(2).
};

WidthConvention parse_width_convention(const std::string& name);
const char* to_string(WidthConvention c);

/// Transverse correlation G(x - x'), normalised to G(0) = 1 and symmetric.
class CorrelationKernel {
 public:
  enum class Kind { Constant, Dirac, Gaussian, SampledSymmetric };

  static CorrelationKernel constant();
  static CorrelationKernel dirac();
  static CorrelationKernel gaussian(double r, double d_ref_um,
                                    WidthConvention convention = WidthConvention::Fwhm);
  /// values[m] = G(m * step_um) for m >= 0; rescaled so values[0] = 1.
  /// Requires values[0] > 0 and 0 <= values[m] <= values[0]. The linear interpolant
  /// falls to zero one step past the last value.
  static CorrelationKernel sampled(double step_um, std::vector<double> values);

  Kind kind() const { return kind_; }
  bool is_analytic() const { return kind_ == Kind::Constant || kind_ == Kind::Dirac; }

  double r() const { return r_; }
  double d_ref_um() const { return d_ref_; }
  WidthConvention convention() const { return convention_; }
  /// Gaussian scale a (um).
  double gaussian_scale() const { return scale_; }
  double sample_step() const { return step_; }
  const std::vector<double>& sample_values() const { return values_; }

  /// Same kernel family with a different r (Gaussian only).
  CorrelationKernel with_r(double r) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  double r_ = 0.0;
  double d_ref_ = 0.0;
  WidthConvention convention_ = WidthConvention::Fwhm;
  double scale_ = 0.0;
  double step_ = 0.0;
  std::vector<double> values_;
};

/// G(dx). Dirac kernels throw AnalyticKernel: they are routed through the
/// single-integral closed form and never sampled.
double correlation_eval(const CorrelationKernel& kernel, double dx);

/// g(kappa) = (1/sqrt(2*pi)) * integral G(u) exp(i*kappa*u) du. Dirac gives the
/// constant 1/sqrt(2*pi); Constant has a delta image and throws AnalyticKernel.
/// Sampled kernels transform their piecewise-linear interpolant exactly.
double correlation_fourier(const CorrelationKernel& kernel, double kappa);

/// Reads (dx_um, value) rows. Rows with dx < 0 must mirror rows with dx > 0.
CorrelationKernel load_sampled_kernel(const std::string& path);

}  // namespace corrdiff
