#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "corrdiff/lattice.hpp"

namespace corrdiff {

/// Largest transmittance a passive mask may have.
inline constexpr double kMaxTransmittance = 1.0;

/// Binary transmission grating: `slit_count` slits of width `slit_width_um`,
/// spaced `period_um` apart, centred on x = 0.
struct GratingSpec {
  double amplitude = 1.0;
  double period_um = 250.0;
  double slit_width_um = 125.0;
  int slit_count = 10;
};

/// Throws InvalidArgument unless 0 < s < d, N >= 1 and 0 <= A0 <= 1.
void validate(const GratingSpec& spec);
/// Centre of slit k, (k - (N-1)/2) * d.
double slit_center(const GratingSpec& spec, int k);
/// (N-1) * d + s.
double grating_extent(const GratingSpec& spec);

/// Closed-form transform (1/sqrt(2*pi)) * integral A(x) exp(iqx) dx of the grating,
/// with the removable points q = 2*pi*m/d taken as limits.
cplx grating_fourier(const GratingSpec& spec, double q);

/// Transmission amplitude A(x): either a closed-form grating or samples with
/// linear interpolation (zero outside the sampled range).
class ApertureProfile {
 public:
  struct Sampled {
    std::vector<double> x_um;
    std::vector<cplx> amplitude;
  };

  static ApertureProfile grating(const GratingSpec& spec);
  /// x must be finite and strictly increasing; |A| <= 1. Amplitudes are trimmed to
  /// the nonzero range, which defines the support.
  static ApertureProfile sampled(std::vector<double> x_um, std::vector<cplx> amplitude);

  cplx operator()(double x) const;

  bool is_grating() const { return std::holds_alternative<GratingSpec>(kind_); }
  const GratingSpec* grating_spec() const { return std::get_if<GratingSpec>(&kind_); }
  const Sampled* sampled_data() const { return std::get_if<Sampled>(&kind_); }

  double support_halfwidth() const { return support_halfwidth_; }
  /// Smallest feature the grid must resolve (slit width for gratings).
  std::optional<double> feature_size() const;
  /// Reference period for q normalisation, when one exists.
  std::optional<double> period() const;

  /// Cell-averaged samples for gratings (an edge landing on a lattice point gives
  /// A0/2), point samples with linear interpolation otherwise.
  std::vector<cplx> sample(const XLattice& x) const;

  std::string describe() const;

 private:
  explicit ApertureProfile(std::variant<GratingSpec, Sampled> kind, double halfwidth)
      : kind_(std::move(kind)), support_halfwidth_(halfwidth) {}

  std::variant<GratingSpec, Sampled> kind_;
  double support_halfwidth_ = 0.0;
};

cplx aperture_eval(const ApertureProfile& profile, double x);

/// Reads a two-column CSV (x_um, amplitude[, imag]) with an optional header line.
ApertureProfile load_sampled_aperture(const std::string& path);

}  // namespace corrdiff
