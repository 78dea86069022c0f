#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace corrdiff {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform object-plane lattice x_j = origin + j * step, j = 0..size-1 (lengths in um).
struct XLattice {
  double origin = 0.0;
  double step = 1.0;
  std::size_t size = 0;

  double at(std::size_t j) const { return origin + static_cast<double>(j) * step; }
  double back() const { return at(size - 1); }
  /// Periodic window length n * step; fixes the conjugate spacing 2*pi / window.
  double window() const { return static_cast<double>(size) * step; }
  double conjugate_step() const { return kTwoPi / window(); }

  /// Sub-lattice covering indices [first, first + count).
  XLattice slice(std::size_t first, std::size_t count) const;
};

/// Builds a lattice from explicit coordinates; throws NonUniformLattice if the
/// spacing varies by more than 1e-9 relative.
XLattice make_x_lattice(std::span<const double> xs);

/// Integer-indexed far-field lattice q_i = (first + i) * step.
struct QLattice {
  double step = 1.0;
  std::int64_t first = 0;
  std::size_t size = 0;

  std::int64_t index(std::size_t i) const { return first + static_cast<std::int64_t>(i); }
  std::int64_t last() const { return first + static_cast<std::int64_t>(size) - 1; }
  double at(std::size_t i) const { return static_cast<double>(index(i)) * step; }
  bool contains(std::int64_t k) const { return k >= first && k <= last(); }
  /// Position of lattice index k inside this lattice; caller checks contains().
  std::size_t position(std::int64_t k) const { return static_cast<std::size_t>(k - first); }
  std::vector<double> values() const;

  bool operator==(const QLattice&) const = default;
};

/// Lattice -K..K with K = floor(q_max / step + 1e-9).
QLattice symmetric_window(double step, double q_max);
/// `count` points centred on zero: -count/2 .. count - count/2 - 1.
QLattice centred_points(double step, std::size_t count);

}  // namespace corrdiff
