#pragma once

#include <optional>
#include <vector>

#include "corrdiff/correlations.hpp"
#include "corrdiff/lattice.hpp"
#include "corrdiff/spectra.hpp"

namespace corrdiff {

/// Object-plane data for prefactor * sum A(x) B(x') G(x - x') exp(i(qx + q'x')).
struct TwoArmField {
  XLattice x;
  std::vector<cplx> a;
  /// nullopt: open arm, B = 1 over the whole line.
  std::optional<std::vector<cplx>> b;
  double prefactor = 1.0 / kTwoPi;
  /// B == A; the overlapping (q, q') block is made exactly symmetric.
  bool symmetric = false;
};

/// Fast evaluation on rows x cols. Constant and Dirac kernels use their closed
/// reductions; other kernels use an FFT convolution per row followed by one
/// lattice transform. An open arm with a numeric kernel uses the lattice image
/// of G, which treats B = 1 on the infinite line.
JointSpectrum fast_joint(const TwoArmField& field, const CorrelationKernel& kernel, const QLattice& rows,
                         const QLattice& cols);

/// Direct double Riemann sum of the defining integral (cell phase factors applied,
/// no FFT). At most 256 rows and 256 cols. Dirac kernels use the single sum.
JointSpectrum brute_force_joint(const TwoArmField& field, const CorrelationKernel& kernel,
                                const QLattice& rows, const QLattice& cols);

inline constexpr std::size_t kOracleMaxPoints = 256;

struct SpectrumComparison {
  double max_rel = 0.0;       ///< over points with |ref| >= floor * scale
  double max_abs = 0.0;       ///< over the remaining near-zero points, in units of scale
  double scale = 0.0;         ///< max |ref|
  std::size_t relative_points = 0;
  bool passed = true;
};

/// Relative tolerance where |ref| >= floor * max|ref|, absolute abs_tol * max|ref| elsewhere.
SpectrumComparison compare_spectra(const JointSpectrum& candidate, const JointSpectrum& reference,
                                   double rel_tol = 1e-8, double abs_tol = 1e-10, double floor = 1e-6);

}  // namespace corrdiff
