#pragma once

#include <optional>

#include "corrdiff/apertures.hpp"
#include "corrdiff/correlations.hpp"
#include "corrdiff/grid.hpp"
#include "corrdiff/joint.hpp"
#include "corrdiff/spectra.hpp"

namespace corrdiff {

enum class SourceModel { Quantum, ClassicalMomentumCorrelated };

/// Photons split into two arms; arm A carries the object.
struct TwoArmScenario {
  ApertureProfile arm_a;
  /// nullopt: arm B is open (B = 1).
  std::optional<ApertureProfile> arm_b;
  CorrelationKernel kernel;
  SimulationGrid grid;
  SourceModel source = SourceModel::Quantum;
};

/// (1/4 pi) * integral A(x) B(x') G(x - x') exp(i(qx + q'x')). Not symmetric in general.
JointSpectrum ghost_joint_amplitude(const TwoArmScenario& s, const QLattice& rows, const QLattice& cols);
/// On the map window in both directions.
JointSpectrum ghost_joint_amplitude(const TwoArmScenario& s);
/// Direct-sum oracle for the same quantity (<= 256 points per axis).
JointSpectrum ghost_brute_force(const TwoArmScenario& s, const QLattice& rows, const QLattice& cols);

/// Classical one-photon pattern |F[A](q)|^2 of one arm on lattice indices [first, last].
std::vector<double> classical_rate(const ApertureProfile& aperture, const SimulationGrid& grid,
                                   std::int64_t first, std::int64_t last);

/// sum over the scan lattice of R_A(q - q0) R_B(q' - q0) dq0 with trapezoid weights.
/// The scan runs over the grid's marginal window. An open arm B is a lattice delta
/// at q = 0 with weight 1/dq.
RateMap classical_coincidence_map(const TwoArmScenario& s, const QLattice& rows, const QLattice& cols);
RateMap classical_coincidence_map(const TwoArmScenario& s);

enum class Line {
  RowConstant,   ///< q = value, profile over q'
  ColConstant,   ///< q' = value, profile over q
  Diagonal,      ///< q' = q + value, profile over q
  AntiDiagonal,  ///< q' = -q + value, profile over q
};

/// Profile along a line with linear interpolation between lattice nodes.
/// Throws InvalidArgument when the line misses the map.
RateProfile cross_section(const RateMap& map, Line line, double value = 0.0);

/// q -> -q.
RateProfile mirrored(const RateProfile& p);

}  // namespace corrdiff
