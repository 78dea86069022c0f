#include <gtest/gtest.h>

#include <cmath>

#include "corrdiff/biphoton.hpp"
#include "corrdiff/error.hpp"
#include "corrdiff/ghost.hpp"
#include "corrdiff/metrics.hpp"
#include "support.hpp"

using namespace corrdiff;

namespace {

TwoArmScenario ghost(const CorrelationKernel& k, SourceModel src = SourceModel::Quantum, bool same_b = false,
                     std::size_t n_x = 8192) {
  const auto a = ApertureProfile::grating(testsupport::figure_grating());
  GridOptions o;
  o.n_x = n_x;
  TwoArmScenario s{a, std::nullopt, k, make_grid(a, o), src};
  if (same_b) s.arm_b = a;
  return s;
}

double classical(double q) { return std::norm(grating_fourier(testsupport::figure_grating(), q)); }

}  // namespace

TEST(GhostQuantum, ConstantKernelConcentratesInZeroColumn) {
  const auto s = ghost(CorrelationKernel::constant());
  const auto f = ghost_joint_amplitude(s);
  const auto m = coincidence_map(f);
  const std::size_t j0 = m.cols.position(0);
  double col_peak = 0.0;
  for (std::size_t i = 0; i < m.rows.size; ++i) {
    for (std::size_t j = 0; j < m.cols.size; ++j) {
      if (j != j0) ASSERT_EQ(m.at(i, j), 0.0);
    }
    col_peak = std::max(col_peak, m.at(i, j0));
  }
  for (std::size_t i = 0; i < m.rows.size; ++i) {
    EXPECT_NEAR(m.at(i, j0) / col_peak, classical(m.rows.at(i)) / classical(0.0), 1e-9);
  }
}

TEST(GhostQuantum, DiracKernelDependsOnSumMomentum) {
  const auto s = ghost(CorrelationKernel::dirac());
  const auto f = ghost_joint_amplitude(s);
  const std::size_t n = f.rows.size;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + i < n; ++j) ASSERT_EQ(f.at(i, j), f.at(i + j, 0));
  }
  const cplx ref = grating_fourier(testsupport::figure_grating(), f.rows.at(3) + f.cols.at(7)) / (2.0 * std::sqrt(2 * kPi));
  EXPECT_LT(std::abs(f.at(3, 7) - ref), 1e-12 * std::abs(ref) + 1e-14);
  for (std::size_t i = 0; i + 1 < n; ++i) EXPECT_EQ(f.at(i + 1, 0), f.at(i, 1));
}

TEST(GhostQuantum, DiracCrossSectionIsClassicalPattern) {
  const auto s = ghost(CorrelationKernel::dirac());
  const auto p = peak_normalized(cross_section(coincidence_map(ghost_joint_amplitude(s)), Line::RowConstant, 0.0));
  ASSERT_EQ(p.axis.size(), s.grid.map_window.size);
  for (std::size_t i = 0; i < p.axis.size(); ++i) EXPECT_NEAR(p.values[i], classical(p.axis[i]) / classical(0.0), 1e-6);
}

TEST(GhostQuantum, MapIsNotSymmetric) {
  const auto m = coincidence_map(ghost_joint_amplitude(ghost(CorrelationKernel::gaussian(1.0, 250.0))));
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < m.rows.size; ++i) {
    for (std::size_t j = 0; j < m.cols.size; ++j) {
      worst = std::max(worst, std::abs(m.at(i, j) - m.at(j, i)));
      peak = std::max(peak, m.at(i, j));
    }
  }
  EXPECT_GT(worst, 0.1 * peak);
}

TEST(GhostQuantum, OpenArmMatchesOracle) {
  for (const auto& k : {CorrelationKernel::gaussian(1.0, 250.0), CorrelationKernel::gaussian(0.1, 250.0),
                        CorrelationKernel::constant(), CorrelationKernel::dirac()}) {
    const auto s = ghost(k, SourceModel::Quantum, false, 2048);
    const auto q = symmetric_window(s.grid.q_step(), 1.5 * s.grid.q0);
    const auto c = compare_spectra(ghost_joint_amplitude(s, q, q), ghost_brute_force(s, q, q));
    EXPECT_TRUE(c.passed) << k.describe() << " rel " << c.max_rel << " abs " << c.max_abs;
  }
}

TEST(GhostQuantum, ClosedArmMatchesOracle) {
  const auto s = ghost(CorrelationKernel::gaussian(0.5, 250.0), SourceModel::Quantum, true, 2048);
  const auto rows = symmetric_window(s.grid.q_step(), 1.5 * s.grid.q0);
  const QLattice cols{s.grid.q_step(), -40, 100};
  const auto c = compare_spectra(ghost_joint_amplitude(s, rows, cols), ghost_brute_force(s, rows, cols));
  EXPECT_TRUE(c.passed) << c.max_rel << " " << c.max_abs;
}

TEST(GhostQuantum, RequiresQuantumSource) {
  EXPECT_THROW(ghost_joint_amplitude(ghost(CorrelationKernel::dirac(), SourceModel::ClassicalMomentumCorrelated)), Error);
  EXPECT_THROW(classical_coincidence_map(ghost(CorrelationKernel::dirac())), Error);
}

TEST(GhostClassical, OpenArmIsShiftedPattern) {
  const auto s = ghost(CorrelationKernel::constant(), SourceModel::ClassicalMomentumCorrelated);
  const auto m = classical_coincidence_map(s);
  EXPECT_TRUE(m.warnings.empty());
  for (std::size_t i = 0; i < m.rows.size; i += 5) {
    for (std::size_t j = 0; j < m.cols.size; j += 3) {
      const double ref = classical(m.rows.at(i) - m.cols.at(j));
      EXPECT_NEAR(m.at(i, j), ref, 1e-12 * classical(0.0));
    }
  }
}

TEST(GhostClassical, MirrorsQuantumDiracMap) {
  const auto qm = peak_normalized(coincidence_map(ghost_joint_amplitude(ghost(CorrelationKernel::dirac()))));
  const auto cm = peak_normalized(classical_coincidence_map(ghost(CorrelationKernel::dirac(), SourceModel::ClassicalMomentumCorrelated)));
  const std::size_t n = qm.cols.size;
  for (std::size_t i = 0; i < qm.rows.size; ++i) {
    for (std::size_t j = 0; j < n; ++j) ASSERT_NEAR(cm.at(i, j), qm.at(i, n - 1 - j), 1e-9);
  }
}

TEST(GhostClassical, ZeroCrossSectionsAgreeAfterMirror) {
  const auto qp = peak_normalized(cross_section(coincidence_map(ghost_joint_amplitude(ghost(CorrelationKernel::dirac()))),
                                                Line::RowConstant, 0.0));
  const auto cp = peak_normalized(mirrored(cross_section(
      classical_coincidence_map(ghost(CorrelationKernel::dirac(), SourceModel::ClassicalMomentumCorrelated)), Line::RowConstant, 0.0)));
  ASSERT_EQ(qp.axis, cp.axis);
  EXPECT_LE(max_abs_difference(qp, cp), 1e-6);
}

TEST(SameObjectClassical, DiagonalIsConstant) {
  const auto m = classical_coincidence_map(ghost(CorrelationKernel::constant(), SourceModel::ClassicalMomentumCorrelated, true));
  EXPECT_TRUE(m.warnings.empty());
  const auto d = cross_section(m, Line::Diagonal, 0.0);
  const auto [lo, hi] = std::minmax_element(d.values.begin(), d.values.end());
  EXPECT_LE(*hi / *lo - 1.0, 1e-6);
}

TEST(SameObjectClassical, AntiDiagonalIsAutocorrelation) {
  const auto s = ghost(CorrelationKernel::constant(), SourceModel::ClassicalMomentumCorrelated, true);
  const auto anti = cross_section(classical_coincidence_map(s), Line::AntiDiagonal, 0.0);
  const auto& scan = s.grid.marginal_window;
  for (std::size_t i = 0; i < anti.axis.size(); i += 4) {
    const double q = anti.axis[i];
    double ref = 0.0;
    for (std::size_t m = 0; m < scan.size; ++m) {
      const double w = (m == 0 || m + 1 == scan.size) ? 0.5 : 1.0;
      const double q0 = scan.at(m);
      ref += w * classical(q - q0) * classical(-q - q0) * scan.step;
    }
    EXPECT_NEAR(anti.values[i] / ref, 1.0, 1e-9) << q;
  }
}

TEST(SameObjectClassical, AntiDiagonalHalvesPeriodWithoutNarrowing) {
  const auto s = ghost(CorrelationKernel::constant(), SourceModel::ClassicalMomentumCorrelated, true);
  const double q0 = s.grid.q0;
  const auto anti = cross_section(classical_coincidence_map(s), Line::AntiDiagonal, 0.0);
  const auto peaks = principal_maxima(anti, 0.5 * q0, 2.25 * q0);
  ASSERT_GE(peaks.size(), 5u);
  for (double sp : peak_spacings(peaks)) EXPECT_NEAR(sp, 0.5 * q0, s.grid.q_step() + 1e-12);

  RateProfile cls;
  cls.axis = s.grid.map_window.values();
  for (double q : cls.axis) cls.values.push_back(classical(q));
  const double cls_fwhm = envelope_fwhm(principal_maxima(cls, q0, 2.5 * q0));
  // As a function of the momentum lag 2q the autocorrelation envelope is no narrower.
  const auto lag = rescaled_axis(anti, 2.0);
  const double lag_fwhm = envelope_fwhm(principal_maxima(lag, q0, 2.5 * q0));
  EXPECT_GE(lag_fwhm, cls_fwhm);
}

TEST(CrossSection, InterpolatesBetweenNodes) {
  RateMap m;
  m.rows = QLattice{1.0, -1, 3};
  m.cols = QLattice{1.0, -1, 3};
  m.values = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const auto row = cross_section(m, Line::RowConstant, 0.5);
  ASSERT_EQ(row.values.size(), 3u);
  EXPECT_DOUBLE_EQ(row.values[0], 4.5);
  EXPECT_DOUBLE_EQ(row.values[2], 6.5);
  const auto col = cross_section(m, Line::ColConstant, -1.0);
  EXPECT_EQ(col.values, (std::vector<double>{0, 3, 6}));
  const auto diag = cross_section(m, Line::Diagonal, 0.0);
  EXPECT_EQ(diag.values, (std::vector<double>{0, 4, 8}));
  const auto anti = cross_section(m, Line::AntiDiagonal, 0.0);
  EXPECT_EQ(anti.values, (std::vector<double>{2, 4, 6}));
  const auto shifted = cross_section(m, Line::Diagonal, 1.0);
  EXPECT_EQ(shifted.axis, (std::vector<double>{-1, 0}));
  EXPECT_EQ(shifted.values, (std::vector<double>{1, 5}));
}

TEST(CrossSection, RejectsLinesOutsideMap) {
  RateMap m;
  m.rows = QLattice{1.0, -1, 3};
  m.cols = QLattice{1.0, -1, 3};
  m.values.assign(9, 1.0);
  EXPECT_THROW(cross_section(m, Line::RowConstant, 1.5), Error);
  EXPECT_THROW(cross_section(m, Line::Diagonal, 5.0), Error);
  EXPECT_THROW(cross_section(m, Line::ColConstant, std::nan("")), Error);
}

TEST(CrossSection, ZeroLineGivesZeroProfile) {
  const auto m = coincidence_map(ghost_joint_amplitude(ghost(CorrelationKernel::constant())));
  const auto p = cross_section(m, Line::ColConstant, 0.5 * m.cols.at(m.cols.size - 1));
  for (double v : p.values) EXPECT_EQ(v, 0.0);
}

TEST(CrossSection, Mirrored) {
  RateProfile p;
  p.axis = {-1.0, 0.0, 2.0};
  p.values = {1.0, 2.0, 3.0};
  const auto m = mirrored(p);
  EXPECT_EQ(m.axis, (std::vector<double>{-2.0, 0.0, 1.0}));
  EXPECT_EQ(m.values, (std::vector<double>{3.0, 2.0, 1.0}));
}
