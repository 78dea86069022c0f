#include <gtest/gtest.h>

#include <cmath>

#include "corrdiff/biphoton.hpp"
#include "corrdiff/error.hpp"
#include "corrdiff/metrics.hpp"
#include "support.hpp"

using namespace corrdiff;

namespace {

Scenario figure_scenario(const CorrelationKernel& k, const GridOptions& o = {}) {
  const auto a = ApertureProfile::grating(testsupport::figure_grating());
  return Scenario{a, k, make_grid(a, o)};
}

JointSpectrum square_map(const Scenario& s) { return joint_amplitude(s, s.grid.map_window, s.grid.map_window); }

std::vector<double> classical_profile(const std::vector<double>& q) {
  std::vector<double> out;
  for (double v : q) out.push_back(std::norm(grating_fourier(testsupport::figure_grating(), v)));
  return testsupport::normalized(out);
}

RateProfile window(const RateProfile& p, double half) {
  RateProfile out;
  for (std::size_t i = 0; i < p.axis.size(); ++i) {
    if (std::abs(p.axis[i]) <= half * (1 + 1e-12)) {
      out.axis.push_back(p.axis[i]);
      out.values.push_back(p.values[i]);
    }
  }
  return out;
}

// Oracle visibility of the r = 0.78 (1/e^2 convention) marginal over |q| <= 1.5 q0.
constexpr double kPartialVisibility = 0.5071;

// Marginal by Parseval in x': (1/2pi) sum_x' |A(x') h_q(x')|^2 dx with
// h_q(x') = sum_x A(x) G(x - x') exp(iqx) dx * sinc(q dx / 2).
std::vector<double> parseval_marginal(const Scenario& s, const QLattice& q) {
  const auto& x = s.grid.x;
  const auto a = s.aperture.sample(x);
  std::vector<std::size_t> lit;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] != cplx{}) lit.push_back(j);
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < q.size; ++i) {
    const double qq = q.at(i);
    const double ff = std::abs(qq * x.step) < 1e-12 ? 1.0 : std::sin(0.5 * qq * x.step) / (0.5 * qq * x.step);
    std::vector<cplx> e(lit.size());
    for (std::size_t n = 0; n < lit.size(); ++n) e[n] = a[lit[n]] * std::polar(1.0, qq * x.at(lit[n]));
    double total = 0.0;
    for (std::size_t m = 0; m < lit.size(); ++m) {
      cplx h{};
      for (std::size_t n = 0; n < lit.size(); ++n) h += e[n] * correlation_eval(s.kernel, x.at(lit[n]) - x.at(lit[m]));
      total += std::norm(a[lit[m]] * h * x.step * ff);
    }
    out.push_back(total * x.step / (2 * kPi));
  }
  return out;
}

}  // namespace

TEST(JointAmplitude, ConstantKernelIsSeparable) {
  const auto s = figure_scenario(CorrelationKernel::constant());
  const auto f = square_map(s);
  JointSpectrum ref = f;
  for (std::size_t i = 0; i < f.rows.size; ++i) {
    for (std::size_t j = 0; j < f.cols.size; ++j) {
      ref.at(i, j) = grating_fourier(testsupport::figure_grating(), f.rows.at(i)) *
                     grating_fourier(testsupport::figure_grating(), f.cols.at(j));
    }
  }
  const auto c = compare_spectra(f, ref);
  EXPECT_TRUE(c.passed) << c.max_rel << " " << c.max_abs;
  EXPECT_EQ(f.provenance.method, "separable-product");
  EXPECT_EQ(f.provenance.geometry, "same_object");
}

TEST(JointAmplitude, DiracKernelDependsOnSumMomentum) {
  const auto s = figure_scenario(CorrelationKernel::dirac());
  const auto f = square_map(s);
  JointSpectrum ref = f;
  for (std::size_t i = 0; i < f.rows.size; ++i) {
    for (std::size_t j = 0; j < f.cols.size; ++j) {
      ref.at(i, j) = grating_fourier(testsupport::figure_grating(), f.rows.at(i) + f.cols.at(j)) / std::sqrt(2 * kPi);
    }
  }
  EXPECT_TRUE(compare_spectra(f, ref).passed);
  const std::size_t n = f.rows.size;
  for (std::size_t i = 1; i < n; ++i) EXPECT_EQ(f.at(i, n - 1 - i), f.at(0, n - 1)) << i;
}

TEST(JointAmplitude, GaussianKernelShowsHalfIntegerBands) {
  const auto s = figure_scenario(CorrelationKernel::gaussian(1.0, 250.0));
  const QLattice half{s.grid.q_step(), 32, 1};
  const QLattice quarter{s.grid.q_step(), 16, 1};
  const auto f = brute_force_joint(s, half);
  EXPECT_GT(std::abs(f.at(0, 0)), 0.0);
  EXPECT_GT(std::norm(f.at(0, 0)), 10.0 * std::norm(brute_force_joint(s, quarter).at(0, 0)));
}

TEST(CoincidenceMap, SymmetricEvenAndNonnegative) {
  for (const auto& k : {CorrelationKernel::constant(), CorrelationKernel::dirac(), CorrelationKernel::gaussian(1.0, 250.0),
                        CorrelationKernel::gaussian(0.78, 250.0, WidthConvention::E2HalfWidth)}) {
    const auto m = coincidence_map(square_map(figure_scenario(k)));
    const std::size_t n = m.rows.size;
    double peak = 0.0;
    for (double v : m.values) {
      EXPECT_GE(v, 0.0);
      peak = std::max(peak, v);
    }
    EXPECT_EQ(m.at(n / 2, n / 2), peak) << k.describe();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_EQ(m.at(i, j), m.at(j, i));
        ASSERT_NEAR(m.at(i, j), m.at(n - 1 - i, n - 1 - j), 1e-12 * peak);
      }
    }
  }
}

TEST(CoincidenceMap, ConstantKernelDiagonalIsSquaredMarginal) {
  const auto s = figure_scenario(CorrelationKernel::constant());
  const auto r2 = coincidence_map(joint_amplitude(s));
  const auto r1 = peak_normalized(one_photon_marginal(r2));
  const auto diag = peak_normalized(diagonal_cut(r2, 1));
  ASSERT_EQ(diag.values.size(), s.grid.map_window.size);
  std::vector<double> squared;
  for (double v : r1.values) squared.push_back(v * v);
  const auto e = testsupport::profile_error(diag.values, squared);
  EXPECT_LE(e.max_rel, 1e-6);
  EXPECT_LE(e.max_abs, 1e-6);
}

TEST(Marginal, DiracKernelIsFlat) {
  const auto s = figure_scenario(CorrelationKernel::dirac());
  const auto r1 = one_photon_marginal(coincidence_map(joint_amplitude(s)));
  EXPECT_TRUE(r1.warnings.empty());
  EXPECT_LT(r1.truncation_fraction, kTruncationBudget);
  const auto w = window(r1, 2.0 * s.grid.q0);
  const auto [lo, hi] = std::minmax_element(w.values.begin(), w.values.end());
  EXPECT_LE(*hi / *lo - 1.0, 1e-3);
}

TEST(Marginal, ConstantKernelIsClassicalPattern) {
  const auto s = figure_scenario(CorrelationKernel::constant());
  const auto r1 = peak_normalized(one_photon_marginal(coincidence_map(joint_amplitude(s))));
  const auto e = testsupport::profile_error(r1.values, classical_profile(r1.axis));
  EXPECT_LE(e.max_rel, 1e-6);
  EXPECT_LE(e.max_abs, 1e-6);
}

TEST(Marginal, PartialModulationAtFittedWidth) {
  const auto k = CorrelationKernel::gaussian(0.78, 250.0, WidthConvention::E2HalfWidth);
  const auto s = figure_scenario(k);
  const auto r1 = one_photon_marginal(coincidence_map(joint_amplitude(s)));
  EXPECT_TRUE(r1.warnings.empty());
  const double v = visibility(r1, 1.5 * s.grid.q0);

  const auto q = symmetric_window(s.grid.q_step(), 1.5 * s.grid.q0);
  RateProfile oracle;
  oracle.axis = q.values();
  oracle.values = parseval_marginal(s, q);
  const double v_oracle = visibility(oracle, 1.5 * s.grid.q0);
  // The engine integrates q' over +-32 q0; the oracle over the whole line.
  EXPECT_NEAR(v, v_oracle, 5e-4);
  EXPECT_NEAR(v_oracle, kPartialVisibility, 1e-4);

  const double v_dirac = visibility(one_photon_marginal(coincidence_map(joint_amplitude(figure_scenario(CorrelationKernel::dirac())))),
                                    1.5 * s.grid.q0);
  const double v_const = visibility(one_photon_marginal(coincidence_map(joint_amplitude(figure_scenario(CorrelationKernel::constant())))),
                                    1.5 * s.grid.q0);
  EXPECT_LT(v_dirac, v);
  EXPECT_LT(v, v_const);
}

TEST(Marginal, MatchesBruteForceMarginal) {
  const auto a = ApertureProfile::grating(testsupport::figure_grating(2));
  GridOptions o;
  o.n_x = 512;
  const Scenario s{a, CorrelationKernel::gaussian(1.0, 250.0), make_grid(a, o)};
  const auto fast = one_photon_marginal(coincidence_map(joint_amplitude(s)));

  const auto& rows = s.grid.map_window;
  const auto& cols = s.grid.marginal_window;
  std::vector<double> slow(rows.size, 0.0);
  for (std::size_t start = 0; start < cols.size; start += kOracleMaxPoints) {
    const QLattice chunk{cols.step, cols.index(start), std::min(kOracleMaxPoints, cols.size - start)};
    const auto f = brute_force_joint(same_object_field(s), s.kernel, rows, chunk);
    for (std::size_t i = 0; i < rows.size; ++i) {
      for (std::size_t j = 0; j < chunk.size; ++j) {
        const std::size_t col = start + j;
        const double w = (col == 0 || col + 1 == cols.size) ? 0.5 : 1.0;
        slow[i] += w * std::norm(f.at(i, j)) * cols.step;
      }
    }
  }
  for (std::size_t i = 0; i < rows.size; ++i) EXPECT_NEAR(fast.values[i] / slow[i], 1.0, 1e-6) << i;
}

TEST(Marginal, WarnsWhenWindowTruncates) {
  GridOptions o;
  o.marginal_window_q0 = 3.0;
  const auto s = figure_scenario(CorrelationKernel::gaussian(0.05, 250.0), o);
  const auto r1 = one_photon_marginal(coincidence_map(joint_amplitude(s)));
  EXPECT_GE(r1.truncation_fraction, kTruncationBudget);
  ASSERT_FALSE(r1.warnings.empty());
  EXPECT_NE(r1.warnings.front().find("truncation"), std::string::npos);
}

TEST(DiagonalCut, ConstantKernelZerosFollowClassicalZeros) {
  const auto s = figure_scenario(CorrelationKernel::constant());
  const auto cut = peak_normalized(diagonal_cut(coincidence_map(square_map(s)), 1));
  const auto cls = classical_profile(cut.axis);
  for (std::size_t i = 0; i < cut.values.size(); ++i) {
    if (cls[i] < 1e-12) EXPECT_LT(cut.values[i], 1e-20);
    EXPECT_NEAR(cut.values[i], cls[i] * cls[i], 1e-9);
  }
}

TEST(DiagonalCut, DiracPrincipalMaximaAtHalfOrders) {
  const auto s = figure_scenario(CorrelationKernel::dirac());
  const auto cut = diagonal_cut(coincidence_map(square_map(s)), 1);
  const double q0 = s.grid.q0;
  const auto peaks = principal_maxima(cut, 0.5 * q0, 1.75 * q0);
  ASSERT_EQ(peaks.size(), 7u);
  for (std::size_t m = 0; m < peaks.size(); ++m) {
    EXPECT_NEAR(peaks[m].q / q0, -1.5 + 0.5 * static_cast<double>(m), s.grid.q_step() / q0 + 1e-12);
  }
  for (double sp : peak_spacings(peaks)) EXPECT_NEAR(sp, kPi / 250.0, s.grid.q_step() + 1e-12);
}

TEST(DiagonalCut, DiracAntiDiagonalIsConstant) {
  const auto cut = diagonal_cut(coincidence_map(square_map(figure_scenario(CorrelationKernel::dirac()))), -1);
  for (double v : cut.values) EXPECT_EQ(v, cut.values.front());
}

TEST(DiagonalCut, DiracIsClassicalAtDoubledArgument) {
  const auto cut = peak_normalized(diagonal_cut(coincidence_map(square_map(figure_scenario(CorrelationKernel::dirac()))), 1));
  std::vector<double> doubled;
  for (double q : cut.axis) doubled.push_back(2.0 * q);
  const auto e = testsupport::profile_error(cut.values, classical_profile(doubled));
  EXPECT_LE(e.max_rel, 1e-6);
  EXPECT_LE(e.max_abs, 1e-6);
}

TEST(DiagonalCut, ClassicalPeriodIsTwiceDiracPeriod) {
  const auto s = figure_scenario(CorrelationKernel::constant());
  const auto cut = diagonal_cut(coincidence_map(square_map(s)), 1);
  const auto peaks = principal_maxima(cut, s.grid.q0, 2.0 * s.grid.q0);
  ASSERT_GE(peaks.size(), 3u);
  for (double sp : peak_spacings(peaks)) EXPECT_NEAR(sp, 2 * kPi / 250.0, s.grid.q_step() + 1e-12);
}

TEST(RSweep, ProfilesArePeakNormalisedAndInterpolate) {
  const auto base = figure_scenario(CorrelationKernel::gaussian(1.0, 250.0));
  const std::vector<double> rs{5.0, 2.0, 1.0, 0.1, 0.05};
  const auto sweep = r_sweep(base, rs);
  ASSERT_EQ(sweep.size(), rs.size());
  for (const auto& e : sweep) {
    EXPECT_EQ(e.diagonal.normalization, Normalization::PeakNormalized);
    EXPECT_DOUBLE_EQ(testsupport::peak(e.diagonal.values), 1.0);
    EXPECT_DOUBLE_EQ(testsupport::peak(e.marginal.values), 1.0);
  }
  const auto dirac = peak_normalized(diagonal_cut(coincidence_map(joint_amplitude(figure_scenario(CorrelationKernel::dirac()))), 1));
  const auto cnst = peak_normalized(diagonal_cut(coincidence_map(joint_amplitude(figure_scenario(CorrelationKernel::constant()))), 1));
  double prev_dirac = 1e9;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const double dd = max_abs_difference(sweep[i].diagonal, dirac);
    EXPECT_LT(dd, prev_dirac) << rs[i];
    prev_dirac = dd;
  }
  // Towards the classical end only: at small r both profiles sit far from it.
  double prev_const = 1e9;
  for (std::size_t i = 3; i-- > 0;) {
    const double dc = max_abs_difference(sweep[i].diagonal, cnst);
    EXPECT_LT(dc, prev_const) << rs[i];
    prev_const = dc;
  }
}

TEST(RSweep, HalfOrderPeakHeightIsIntermediate) {
  const auto base = figure_scenario(CorrelationKernel::gaussian(1.0, 250.0));
  const std::vector<double> rs{0.05, 1.0, 5.0};
  const auto sweep = r_sweep(base, rs);
  const std::int64_t half = 32;  // q = q0 / 2
  auto height = [&](const RateProfile& p) {
    for (std::size_t i = 0; i < p.axis.size(); ++i) {
      if (std::llround(p.axis[i] / base.grid.q_step()) == half) return p.values[i];
    }
    return -1.0;
  };
  const double h005 = height(sweep[0].diagonal), h1 = height(sweep[1].diagonal), h5 = height(sweep[2].diagonal);
  EXPECT_GT(h005, h1);
  EXPECT_GT(h1, h5);
}

TEST(RSweep, RejectsNonPositiveR) {
  const auto base = figure_scenario(CorrelationKernel::gaussian(1.0, 250.0));
  const std::vector<double> rs{1.0, 0.0};
  EXPECT_THROW(r_sweep(base, rs), Error);
}

TEST(Coherence, DiracHasNoOffDiagonalSupport) {
  const auto g = first_order_coherence(figure_scenario(CorrelationKernel::dirac()));
  EXPECT_TRUE(g.delta_diagonal);
  EXPECT_EQ(g.normalization, Normalization::Raw);
  const std::size_t n = g.x.size;
  bool lit = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) ASSERT_EQ(g.at(i, j), cplx{});
    }
    EXPECT_GE(g.at(i, i).real(), 0.0);
    lit = lit || g.at(i, i) != cplx{};
  }
  EXPECT_TRUE(lit);
}

TEST(Coherence, ConstantKernelFactorises) {
  const auto g = first_order_coherence(figure_scenario(CorrelationKernel::constant()));
  const std::size_t n = g.x.size;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ASSERT_NEAR(std::norm(g.at(i, j)), (g.at(i, i) * g.at(j, j)).real(), 1e-8);
    }
  }
}

TEST(Coherence, HermitianWithRealDiagonal) {
  const auto g = first_order_coherence(figure_scenario(CorrelationKernel::gaussian(0.78, 250.0, WidthConvention::E2HalfWidth)));
  EXPECT_EQ(g.normalization, Normalization::PeakNormalized);
  const std::size_t n = g.x.size;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(g.at(i, i).imag(), 0.0);
    EXPECT_GE(g.at(i, i).real(), 0.0);
    for (std::size_t j = 0; j < n; ++j) ASSERT_LE(std::abs(g.at(i, j) - std::conj(g.at(j, i))), 1e-12);
  }
}
