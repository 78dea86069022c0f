#include "corrdiff/joint.hpp"

#include <algorithm>
#include <cmath>

#include "corrdiff/error.hpp"
#include "corrdiff/fft.hpp"
#include "corrdiff/transform.hpp"

namespace corrdiff {

namespace {

const double kSqrtTwoPi = std::sqrt(kTwoPi);

// [first, last] of nonzero entries, or nullopt when all vanish.
std::optional<std::pair<std::size_t, std::size_t>> nonzero_range(const std::vector<cplx>& v) {
  std::size_t lo = v.size(), hi = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != cplx{}) {
      lo = std::min(lo, j);
      hi = j;
    }
  }
  if (lo == v.size()) return std::nullopt;
  return std::make_pair(lo, hi);
}

JointSpectrum empty_spectrum(const QLattice& rows, const QLattice& cols) {
  JointSpectrum out;
  out.rows = rows;
  out.cols = cols;
  out.values.assign(rows.size * cols.size, cplx{});
  return out;
}

void check_field(const TwoArmField& f) {
  if (f.a.size() != f.x.size || (f.b && f.b->size() != f.x.size)) {
    throw Error(ErrorCode::InvalidArgument, "field samples do not match the lattice");
  }
}

void symmetrize(JointSpectrum& s) {
  for (std::size_t i = 0; i < s.rows.size; ++i) {
    const std::int64_t k = s.rows.index(i);
    if (!s.cols.contains(k)) continue;
    const std::size_t jk = s.cols.position(k);
    for (std::size_t j = 0; j < s.cols.size; ++j) {
      const std::int64_t l = s.cols.index(j);
      if (l <= k || !s.rows.contains(l)) continue;
      const std::size_t il = s.rows.position(l);
      const cplx avg = 0.5 * (s.at(i, j) + s.at(il, jk));
      s.at(i, j) = avg;
      s.at(il, jk) = avg;
    }
  }
}

// Lattice image sum_m G(m dx) exp(i q m dx) dx over all m where G is nonzero.
class KernelLatticeImage {
 public:
  KernelLatticeImage(const CorrelationKernel& kernel, double dx, std::size_t max_lag) : dx_(dx) {
    table_.push_back(correlation_eval(kernel, 0.0));
    for (std::size_t m = 1; m <= max_lag; ++m) {
      const double g = correlation_eval(kernel, static_cast<double>(m) * dx);
      if (g == 0.0 && kernel.kind() == CorrelationKernel::Kind::Gaussian) break;
      table_.push_back(g);
    }
  }
  double operator()(double q) const {
    double sum = table_[0];
    for (std::size_t m = 1; m < table_.size(); ++m) sum += 2.0 * table_[m] * std::cos(q * dx_ * static_cast<double>(m));
    return sum * dx_;
  }

 private:
  double dx_;
  std::vector<double> table_;
};

void fill_toeplitz(const TwoArmField& f, const CorrelationKernel& kernel, JointSpectrum& out) {
  const auto ra = nonzero_range(f.a);
  const auto rb = nonzero_range(*f.b);
  if (!ra || !rb) return;
  const XLattice& x = f.x;
  const std::size_t s0 = std::min(ra->first, rb->first);
  const std::size_t s1 = std::max(ra->second, rb->second);
  const std::size_t ns = s1 - s0 + 1;
  const std::size_t p = next_pow2(2 * ns - 1);

  FftPlan kernel_plan(p, FftPlan::Direction::Forward);
  {
    auto in = kernel_plan.input();
    std::fill(in.begin(), in.end(), cplx{});
    for (std::size_t m = 0; m < ns; ++m) {
      const double g = correlation_eval(kernel, static_cast<double>(m) * x.step);
      in[m] = g;
      if (m > 0) in[p - m] = g;
    }
  }
  kernel_plan.execute();
  const std::vector<cplx> kernel_image(kernel_plan.output().begin(), kernel_plan.output().end());

  FftPlan fwd(p, FftPlan::Direction::Forward);
  FftPlan bwd(p, FftPlan::Direction::Backward);
  FftPlan lattice(x.size, FftPlan::Direction::Backward);
  const double dq = x.conjugate_step();
  const double inv_p = 1.0 / static_cast<double>(p);

  std::vector<double> col_factor(out.cols.size);
  std::vector<cplx> col_phase(out.cols.size);
  std::vector<std::size_t> col_slot(out.cols.size);
  for (std::size_t j = 0; j < out.cols.size; ++j) {
    const double ql = out.cols.at(j);
    col_factor[j] = cell_form_factor(ql, x.step);
    col_phase[j] = std::polar(1.0, ql * x.origin);
    const auto n = static_cast<std::int64_t>(x.size);
    col_slot[j] = static_cast<std::size_t>(((out.cols.index(j) % n) + n) % n);
  }

  for (std::size_t i = 0; i < out.rows.size; ++i) {
    const double qk = static_cast<double>(out.rows.index(i)) * dq;
    auto v = fwd.input();
    std::fill(v.begin(), v.end(), cplx{});
    for (std::size_t j = ra->first; j <= ra->second; ++j) v[j - s0] = f.a[j] * std::polar(1.0, qk * x.at(j));
    fwd.execute();
    auto w = bwd.input();
    const auto vf = fwd.output();
    for (std::size_t m = 0; m < p; ++m) w[m] = vf[m] * kernel_image[m];
    bwd.execute();
    const auto conv = bwd.output();
    auto u = lattice.input();
    std::fill(u.begin(), u.end(), cplx{});
    for (std::size_t j = rb->first; j <= rb->second; ++j) u[j] = conv[j - s0] * inv_p * (*f.b)[j];
    lattice.execute();
    const auto sums = lattice.output();
    const double row_scale = f.prefactor * x.step * x.step * cell_form_factor(qk, x.step);
    for (std::size_t j = 0; j < out.cols.size; ++j) {
      out.at(i, j) = sums[col_slot[j]] * col_phase[j] * (row_scale * col_factor[j]);
    }
  }
}

}  // namespace

JointSpectrum fast_joint(const TwoArmField& f, const CorrelationKernel& kernel, const QLattice& rows,
                         const QLattice& cols) {
  check_field(f);
  JointSpectrum out = empty_spectrum(rows, cols);
  const XLattice& x = f.x;
  const auto kind = kernel.kind();

  if (kind == CorrelationKernel::Kind::Dirac) {
    std::vector<cplx> prod = f.a;
    if (f.b) {
      for (std::size_t j = 0; j < prod.size(); ++j) prod[j] *= (*f.b)[j];
    }
    const CellSpectrum s = forward_transform(prod, x);
    for (std::size_t i = 0; i < rows.size; ++i) {
      for (std::size_t j = 0; j < cols.size; ++j) {
        out.at(i, j) = f.prefactor * kSqrtTwoPi * s.at_index(rows.index(i) + cols.index(j));
      }
    }
    out.provenance.method = "dirac-single-integral";
  } else if (kind == CorrelationKernel::Kind::Constant) {
    const CellSpectrum sa = forward_transform(f.a, x);
    const std::vector<cplx> ra = sa.on(rows);
    if (f.b) {
      const std::vector<cplx> rb = forward_transform(*f.b, x).on(cols);
      for (std::size_t i = 0; i < rows.size; ++i) {
        for (std::size_t j = 0; j < cols.size; ++j) out.at(i, j) = f.prefactor * kTwoPi * ra[i] * rb[j];
      }
    } else if (cols.contains(0)) {
      // Open arm: sum_j exp(i q' x_j) dx is the window length at q' = 0 and vanishes elsewhere.
      const std::size_t j0 = cols.position(0);
      for (std::size_t i = 0; i < rows.size; ++i) {
        out.at(i, j0) = f.prefactor * kSqrtTwoPi * x.window() * ra[i];
      }
    }
    out.provenance.method = "separable-product";
  } else if (f.b) {
    fill_toeplitz(f, kernel, out);
    out.provenance.method = "fft-convolution";
  } else {
    const CellSpectrum sa = forward_transform(f.a, x);
    const KernelLatticeImage image(kernel, x.step, x.size);
    std::vector<double> col_image(cols.size);
    for (std::size_t j = 0; j < cols.size; ++j) col_image[j] = image(cols.at(j)) * cell_form_factor(cols.at(j), x.step);
    for (std::size_t i = 0; i < rows.size; ++i) {
      const double row_factor = cell_form_factor(rows.at(i), x.step);
      for (std::size_t j = 0; j < cols.size; ++j) {
        out.at(i, j) = f.prefactor * kSqrtTwoPi * sa.riemann_at_index(rows.index(i) + cols.index(j)) *
                       (row_factor * col_image[j]);
      }
    }
    out.provenance.method = "open-arm-kernel-image";
  }
  if (f.symmetric) symmetrize(out);
  return out;
}

JointSpectrum brute_force_joint(const TwoArmField& f, const CorrelationKernel& kernel, const QLattice& rows,
                                const QLattice& cols) {
  check_field(f);
  if (rows.size > kOracleMaxPoints || cols.size > kOracleMaxPoints) {
    throw Error(ErrorCode::InvalidArgument, "oracle lattice exceeds 256 points per axis");
  }
  JointSpectrum out = empty_spectrum(rows, cols);
  out.provenance.method = "brute-force";
  const XLattice& x = f.x;
  const auto ra = nonzero_range(f.a);
  if (!ra) return out;
  std::vector<cplx> b = f.b ? *f.b : std::vector<cplx>(x.size, cplx{1.0, 0.0});
  const auto rb = nonzero_range(b);
  if (!rb) return out;

  if (kernel.kind() == CorrelationKernel::Kind::Dirac) {
    for (std::size_t i = 0; i < rows.size; ++i) {
      for (std::size_t j = 0; j < cols.size; ++j) {
        const double qs = rows.at(i) + cols.at(j);
        cplx sum{};
        for (std::size_t n = ra->first; n <= ra->second; ++n) sum += f.a[n] * b[n] * std::polar(1.0, qs * x.at(n));
        out.at(i, j) = f.prefactor * sum * x.step * cell_form_factor(qs, x.step);
      }
    }
    return out;
  }

  const std::size_t lo = std::min(ra->first, rb->first);
  const std::size_t hi = std::max(ra->second, rb->second);
  std::vector<double> g(hi - lo + 1);
  for (std::size_t m = 0; m < g.size(); ++m) g[m] = correlation_eval(kernel, static_cast<double>(m) * x.step);

  std::vector<cplx> inner(x.size);
  for (std::size_t i = 0; i < rows.size; ++i) {
    const double q = rows.at(i);
    std::fill(inner.begin(), inner.end(), cplx{});
    for (std::size_t n = ra->first; n <= ra->second; ++n) {
      if (f.a[n] == cplx{}) continue;
      const cplx an = f.a[n] * std::polar(1.0, q * x.at(n));
      for (std::size_t np = rb->first; np <= rb->second; ++np) {
        const std::size_t lag = n > np ? n - np : np - n;
        inner[np] += an * g[lag];
      }
    }
    for (std::size_t j = 0; j < cols.size; ++j) {
      const double qp = cols.at(j);
      cplx sum{};
      for (std::size_t np = rb->first; np <= rb->second; ++np) sum += inner[np] * b[np] * std::polar(1.0, qp * x.at(np));
      out.at(i, j) = f.prefactor * sum * (x.step * x.step * cell_form_factor(q, x.step) * cell_form_factor(qp, x.step));
    }
  }
  return out;
}

SpectrumComparison compare_spectra(const JointSpectrum& candidate, const JointSpectrum& reference,
                                   double rel_tol, double abs_tol, double floor) {
  if (!(candidate.rows == reference.rows) || !(candidate.cols == reference.cols)) {
    throw Error(ErrorCode::InvalidArgument, "spectra live on different lattices");
  }
  SpectrumComparison c;
  for (const cplx& v : reference.values) c.scale = std::max(c.scale, std::abs(v));
  for (std::size_t n = 0; n < reference.values.size(); ++n) {
    const double ref = std::abs(reference.values[n]);
    const double err = std::abs(candidate.values[n] - reference.values[n]);
    if (c.scale > 0.0 && ref >= floor * c.scale) {
      ++c.relative_points;
      c.max_rel = std::max(c.max_rel, err / ref);
    } else {
      c.max_abs = std::max(c.max_abs, c.scale > 0.0 ? err / c.scale : err);
    }
  }
  c.passed = c.max_rel <= rel_tol && c.max_abs <= abs_tol;
  return c;
}

}  // namespace corrdiff
