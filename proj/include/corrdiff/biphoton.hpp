#pragma once

#include <span>
#include <vector>

#include "corrdiff/apertures.hpp"
#include "corrdiff/correlations.hpp"
#include "corrdiff/grid.hpp"
#include "corrdiff/joint.hpp"
#include "corrdiff/spectra.hpp"

namespace corrdiff {

/// Both photons cross the same aperture.
struct Scenario {
  ApertureProfile aperture;
  CorrelationKernel kernel;
  SimulationGrid grid;
};

/// Object-plane samples of the aperture and the same-object field description.
TwoArmField same_object_field(const Scenario& s);

/// F(q, q') on rows x cols; refuses grids with dx > s/8 (GridTooCoarse).
JointSpectrum joint_amplitude(const Scenario& s, const QLattice& rows, const QLattice& cols);
/// Rows on the map window, cols on the marginal window.
JointSpectrum joint_amplitude(const Scenario& s);
/// Direct-sum oracle on a square q lattice (<= 256 points).
JointSpectrum brute_force_joint(const Scenario& s, const QLattice& q);

RateMap coincidence_map(const JointSpectrum& f);

inline constexpr double kTruncationBudget = 1e-4;

/// Trapezoidal integral over q' for every row. Adds a warning when the two
/// boundary columns carry kTruncationBudget or more of any row's total.
RateProfile one_photon_marginal(const RateMap& r2);

/// R2(q, sign * q) for every row whose mirror sits in the columns.
RateProfile diagonal_cut(const RateMap& r2, int sign);

struct SweepEntry {
  double r = 0.0;
  RateProfile marginal;
  RateProfile diagonal;
};

/// One Gaussian run per r, profiles peak-normalised. The base kernel supplies the
/// width convention and d_ref when it is Gaussian; otherwise FWHM and the grid's d.
std::vector<SweepEntry> r_sweep(const Scenario& base, std::span<const double> r_values);

/// g1(x, x') on the sub-lattice covering the aperture support.
struct CoherenceMatrix {
  XLattice x;
  std::vector<cplx> values;
  /// Analytic Dirac result: a diagonal-supported distribution whose weights sit on the diagonal.
  bool delta_diagonal = false;
  Normalization normalization = Normalization::Raw;

  cplx at(std::size_t i, std::size_t j) const { return values[i * x.size + j]; }
};

/// Numeric kernels: 4 A*(x) A(x') sum_y |A(y)|^2 G(x-y) G(x'-y) dy, peak-normalised.
/// Dirac: weights 2(|A(x)|^2 + |A(x')|^2)|A(x)|^2 on the diagonal, zero elsewhere, raw.
CoherenceMatrix first_order_coherence(const Scenario& s);

}  // namespace corrdiff
