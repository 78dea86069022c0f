#include "corrdiff/biphoton.hpp"

#include <algorithm>
#include <cmath>

#include "corrdiff/error.hpp"

namespace corrdiff {

namespace {

Provenance same_object_provenance(const Scenario& s) {
  return Provenance{s.aperture.describe(), s.kernel.describe(), "same_object", s.grid.describe(), ""};
}

}  // namespace

TwoArmField same_object_field(const Scenario& s) {
  TwoArmField f;
  f.x = s.grid.x;
  f.a = s.aperture.sample(s.grid.x);
  f.b = f.a;
  f.prefactor = 1.0 / kTwoPi;
  f.symmetric = true;
  return f;
}

JointSpectrum joint_amplitude(const Scenario& s, const QLattice& rows, const QLattice& cols) {
  require_resolved(s.aperture, s.grid);
  JointSpectrum out = fast_joint(same_object_field(s), s.kernel, rows, cols);
  const std::string method = out.provenance.method;
  out.provenance = same_object_provenance(s);
  out.provenance.method = method;
  return out;
}

JointSpectrum joint_amplitude(const Scenario& s) {
  return joint_amplitude(s, s.grid.map_window, s.grid.marginal_window);
}

JointSpectrum brute_force_joint(const Scenario& s, const QLattice& q) {
  JointSpectrum out = brute_force_joint(same_object_field(s), s.kernel, q, q);
  out.provenance = same_object_provenance(s);
  out.provenance.method = "brute-force";
  return out;
}

RateMap coincidence_map(const JointSpectrum& f) {
  RateMap m;
  m.rows = f.rows;
  m.cols = f.cols;
  m.values.resize(f.values.size());
  for (std::size_t n = 0; n < f.values.size(); ++n) m.values[n] = std::norm(f.values[n]);
  return m;
}

RateProfile one_photon_marginal(const RateMap& r2) {
  RateProfile p;
  p.axis = r2.rows.values();
  p.values.assign(r2.rows.size, 0.0);
  p.normalization = Normalization::Raw;
  p.warnings = r2.warnings;
  const std::size_t nc = r2.cols.size;
  if (nc == 0) return p;
  const double dq = r2.cols.step;
  double worst = 0.0;
  for (std::size_t i = 0; i < r2.rows.size; ++i) {
    double total = 0.0, edge = 0.0;
    for (std::size_t j = 0; j < nc; ++j) {
      const double w = (nc > 1 && (j == 0 || j + 1 == nc)) ? 0.5 : 1.0;
      const double v = w * r2.at(i, j) * dq;
      total += v;
      if (j == 0 || j + 1 == nc) edge += v;
    }
    p.values[i] = total;
    if (total > 0.0) worst = std::max(worst, edge / total);
  }
  p.truncation_fraction = worst;
  if (worst >= kTruncationBudget) {
    p.warnings.push_back("marginal truncation: boundary columns carry " + std::to_string(worst) +
                         " of a row total (budget 1e-4)");
  }
  return p;
}

RateProfile diagonal_cut(const RateMap& r2, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "diagonal sign must be +1 or -1");
  RateProfile p;
  p.normalization = r2.normalization;
  p.warnings = r2.warnings;
  for (std::size_t i = 0; i < r2.rows.size; ++i) {
    const std::int64_t k = sign * r2.rows.index(i);
    if (!r2.cols.contains(k)) continue;
    p.axis.push_back(r2.rows.at(i));
    p.values.push_back(r2.at(i, r2.cols.position(k)));
  }
  return p;
}

std::vector<SweepEntry> r_sweep(const Scenario& base, std::span<const double> r_values) {
  std::vector<SweepEntry> out;
  for (double r : r_values) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "sweep r values must be positive");
    Scenario s = base;
    s.kernel = base.kernel.kind() == CorrelationKernel::Kind::Gaussian
                   ? base.kernel.with_r(r)
                   : CorrelationKernel::gaussian(r, base.grid.reference_length_um);
    const RateMap r2 = coincidence_map(joint_amplitude(s));
    SweepEntry e;
    e.r = r;
    e.marginal = peak_normalized(one_photon_marginal(r2));
    e.diagonal = peak_normalized(diagonal_cut(r2, 1));
    out.push_back(std::move(e));
  }
  return out;
}

CoherenceMatrix first_order_coherence(const Scenario& s) {
  const auto [first, count] = s.grid.support_range(s.aperture.support_halfwidth());
  CoherenceMatrix g;
  g.x = s.grid.x.slice(first, count);
  const std::vector<cplx> a = s.aperture.sample(g.x);
  const std::size_t n = count;
  g.values.assign(n * n, cplx{});

  if (s.kernel.kind() == CorrelationKernel::Kind::Dirac) {
    g.delta_diagonal = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double i2 = std::norm(a[i]);
      g.values[i * n + i] = 2.0 * (i2 + i2) * i2;
    }
    return g;
  }

  std::vector<std::size_t> lit;
  for (std::size_t y = 0; y < n; ++y) {
    if (a[y] != cplx{}) lit.push_back(y);
  }
  std::vector<double> table(n);
  for (std::size_t m = 0; m < n; ++m) table[m] = correlation_eval(s.kernel, static_cast<double>(m) * g.x.step);
  auto lag = [&](std::size_t u, std::size_t v) { return table[u > v ? u - v : v - u]; };

  const double dx = g.x.step;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = i; j < n; ++j) {
      if (a[j] == cplx{}) continue;
      double m = 0.0;
      for (std::size_t y : lit) m += std::norm(a[y]) * lag(i, y) * lag(j, y);
      const cplx v = 4.0 * std::conj(a[i]) * a[j] * (m * dx);
      g.values[i * n + j] = v;
      g.values[j * n + i] = std::conj(v);
    }
  }
  double peak = 0.0;
  for (const cplx& v : g.values) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (cplx& v : g.values) v /= peak;
    g.normalization = Normalization::PeakNormalized;
  }
  return g;
}

}  // namespace corrdiff
