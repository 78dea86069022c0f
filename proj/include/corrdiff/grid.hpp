#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "corrdiff/apertures.hpp"
#include "corrdiff/lattice.hpp"

namespace corrdiff {

struct GridOptions {
  std::size_t n_x = 8192;
  double padding_factor = 4.0;
  std::optional<double> window_um;
  /// Half-width of the displayed (q, q') map, in units of q0.
  double q_window_q0 = 2.5;
  /// Half-width of the q' lattice integrated over for one-photon marginals;
  /// clamped to the lattice Nyquist index.
  double marginal_window_q0 = 32.0;
  /// Overrides the normalisation length d when the aperture has no period.
  std::optional<double> reference_length_um;
};

/// Object-plane lattice, its conjugate far-field lattices and the q0 unit.
struct SimulationGrid {
  XLattice x;
  /// 2*pi / d; d is the grating period, or the reference length for sampled apertures.
  double q0 = 0.0;
  double reference_length_um = 0.0;
  QLattice map_window;
  QLattice marginal_window;

  double q_step() const { return x.conjugate_step(); }
  double x_min() const { return x.origin; }
  double x_max() const { return x.origin + x.window(); }
  /// Indices [first, first + count) of x covering the aperture support.
  std::pair<std::size_t, std::size_t> support_range(double halfwidth) const;
  std::string describe() const;
};

/// Builds a lattice whose window is at least padding_factor times the aperture
/// extent. Grating grids pick dx = gcd(d, s) / 2^k so that every slit edge falls
/// on a cell boundary. Throws InvalidArgument when padding < 4 or n_x < 2.
SimulationGrid make_grid(const ApertureProfile& aperture, const GridOptions& options = {});

/// Throws GridTooCoarse when dx exceeds feature_size / 8.
void require_resolved(const ApertureProfile& aperture, const SimulationGrid& grid);

}  // namespace corrdiff
