#include "corrdiff/lattice.hpp"

#include <cmath>

#include "corrdiff/error.hpp"

namespace corrdiff {

XLattice XLattice::slice(std::size_t first, std::size_t count) const {
  if (first + count > size) throw Error(ErrorCode::InvalidArgument, "lattice slice out of range");
  return XLattice{at(first), step, count};
}

XLattice make_x_lattice(std::span<const double> xs) {
  if (xs.size() < 2) throw Error(ErrorCode::InvalidArgument, "lattice needs at least two points");
  const double step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::NonUniformLattice, "lattice must be strictly increasing");
  }
  for (std::size_t j = 1; j < xs.size(); ++j) {
    const double d = xs[j] - xs[j - 1];
    if (std::abs(d - step) > 1e-9 * step) {
      throw Error(ErrorCode::NonUniformLattice,
                  "spacing at index " + std::to_string(j) + " deviates from uniform step");
    }
  }
  return XLattice{xs.front(), step, xs.size()};
}

std::vector<double> QLattice::values() const {
  std::vector<double> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = at(i);
  return out;
}

QLattice symmetric_window(double step, double q_max) {
  if (!(step > 0.0) || !(q_max >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bad q window");
  const auto k = static_cast<std::int64_t>(std::floor(q_max / step + 1e-9));
  return QLattice{step, -k, static_cast<std::size_t>(2 * k + 1)};
}

QLattice centred_points(double step, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "empty q lattice");
  return QLattice{step, -static_cast<std::int64_t>(count / 2), count};
}

}  // namespace corrdiff
