#include "corrdiff/transform.hpp"

#include <cmath>

#include "corrdiff/error.hpp"
#include "corrdiff/fft.hpp"

namespace corrdiff {

namespace {
const double kInvSqrtTwoPi = 1.0 / std::sqrt(kTwoPi);

std::size_t wrap(std::int64_t k, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  std::int64_t r = k % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}
}  // namespace

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

CellSpectrum::CellSpectrum(XLattice x, std::vector<cplx> periodic_sums)
    : x_(x), sums_(std::move(periodic_sums)) {
  if (sums_.size() != x_.size) throw Error(ErrorCode::InvalidArgument, "spectrum size mismatch");
}

cplx CellSpectrum::at_index(std::int64_t k) const {
  const double q = static_cast<double>(k) * q_step();
  const cplx phase = std::polar(1.0, q * x_.origin);
  return sums_[wrap(k, x_.size)] * phase * (x_.step * cell_form_factor(q, x_.step) * kInvSqrtTwoPi);
}

cplx CellSpectrum::riemann_at_index(std::int64_t k) const {
  const double q = static_cast<double>(k) * q_step();
  return sums_[wrap(k, x_.size)] * std::polar(1.0, q * x_.origin) * (x_.step * kInvSqrtTwoPi);
}

std::vector<cplx> CellSpectrum::on(const QLattice& q) const {
  std::vector<cplx> out(q.size);
  for (std::size_t i = 0; i < q.size; ++i) out[i] = at_index(q.index(i));
  return out;
}

CellSpectrum forward_transform(std::span<const cplx> samples, const XLattice& x) {
  if (x.size < 2 || samples.size() != x.size) {
    throw Error(ErrorCode::InvalidArgument, "forward_transform needs >= 2 samples matching the lattice");
  }
  FftPlan plan(x.size, FftPlan::Direction::Backward);
  auto out = plan.run(samples);
  return CellSpectrum(x, std::vector<cplx>(out.begin(), out.end()));
}

CellSpectrum forward_transform(std::span<const cplx> samples, std::span<const double> xs) {
  return forward_transform(samples, make_x_lattice(xs));
}

std::vector<cplx> inverse_transform(const CellSpectrum& spectrum) {
  const XLattice& x = spectrum.x_lattice();
  const QLattice q = spectrum.natural_lattice();
  std::vector<cplx> sums(x.size);
  for (std::size_t i = 0; i < q.size; ++i) {
    const std::int64_t k = q.index(i);
    const double qk = q.at(i);
    const cplx scale = std::polar(1.0, qk * x.origin) *
                       (x.step * cell_form_factor(qk, x.step) * kInvSqrtTwoPi);
    sums[wrap(k, x.size)] = spectrum.at_index(k) / scale;
  }
  FftPlan plan(x.size, FftPlan::Direction::Forward);
  auto out = plan.run(sums);
  std::vector<cplx> samples(out.begin(), out.end());
  for (auto& v : samples) v /= static_cast<double>(x.size);
  return samples;
}

}  // namespace corrdiff
