#pragma once

#include <span>
#include <vector>

#include "corrdiff/lattice.hpp"

namespace corrdiff {

/// sin(u)/u with the removable point handled.
double sinc(double u);

/// Fourier factor of one lattice cell, sinc(q * step / 2).
inline double cell_form_factor(double q, double step) { return sinc(0.5 * q * step); }

/// Far-field image of a sampled profile under (1/sqrt(2*pi)) * integral f(x) exp(iqx) dx,
/// where f is the piecewise-constant interpolant of the samples (each sample fills
/// its cell [x_j - dx/2, x_j + dx/2]). The value is exact for that interpolant at every
/// q = k * 2*pi / window, including indices outside the principal DFT range.
class CellSpectrum {
 public:
  CellSpectrum(XLattice x, std::vector<cplx> periodic_sums);

  const XLattice& x_lattice() const { return x_; }
  double q_step() const { return x_.conjugate_step(); }
  /// Principal conjugate lattice (n points centred on zero).
  QLattice natural_lattice() const { return centred_points(q_step(), x_.size); }

  cplx at_index(std::int64_t k) const;
  /// Riemann sum (1/sqrt(2*pi)) * sum_j f_j exp(i q_k x_j) dx, without the cell factor.
  cplx riemann_at_index(std::int64_t k) const;
  std::vector<cplx> on(const QLattice& q) const;
  std::vector<cplx> values() const { return on(natural_lattice()); }

  /// Raw periodic sums D[m] = sum_j f_j exp(2*pi*i*m*j/n), exposed for the inverse.
  std::span<const cplx> periodic_sums() const { return sums_; }

 private:
  XLattice x_;
  std::vector<cplx> sums_;
};

/// Scaled discrete transform; throws for lattices with fewer than two points.
CellSpectrum forward_transform(std::span<const cplx> samples, const XLattice& x);
/// Same, validating that `xs` is uniform (NonUniformLattice otherwise).
CellSpectrum forward_transform(std::span<const cplx> samples, std::span<const double> xs);

/// Inverse of forward_transform, returning the original samples.
std::vector<cplx> inverse_transform(const CellSpectrum& spectrum);

}  // namespace corrdiff
