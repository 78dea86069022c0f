#include "corrdiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "corrdiff/error.hpp"

namespace corrdiff {

namespace {

constexpr double kMinPadding = 4.0;

// Largest u with d = p*u and s = q*u for small coprime integers p, q.
std::optional<double> common_unit(double d, double s) {
  const double ratio = d / s;
  for (long q = 1; q <= 4096; ++q) {
    const double p = std::nearbyint(ratio * static_cast<double>(q));
    if (std::abs(p - ratio * static_cast<double>(q)) < 1e-9 * p) return s / static_cast<double>(q);
  }
  return std::nullopt;
}

double frac(double v) { return v - std::floor(v); }

}  // namespace

std::pair<std::size_t, std::size_t> SimulationGrid::support_range(double halfwidth) const {
  const double h = x.step;
  auto lo = static_cast<std::int64_t>(std::floor((-halfwidth - x.origin) / h - 0.5));
  auto hi = static_cast<std::int64_t>(std::ceil((halfwidth - x.origin) / h + 0.5));
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(x.size) - 1);
  if (hi < lo) return {0, 0};
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo + 1)};
}

std::string SimulationGrid::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "grid(n_x=" << x.size << ", dx_um=" << x.step << ", x_min_um=" << x_min()
     << ", window_um=" << x.window() << ", q0=" << q0 << ", map=" << map_window.first << ".."
     << map_window.last() << ", marginal=" << marginal_window.first << ".." << marginal_window.last()
     << ")";
  return os.str();
}

SimulationGrid make_grid(const ApertureProfile& aperture, const GridOptions& options) {
  if (options.n_x < 2) throw Error(ErrorCode::InvalidArgument, "grid needs n_x >= 2");
  if (!(options.padding_factor >= kMinPadding)) {
    throw Error(ErrorCode::InvalidArgument, "padding factor must be >= 4");
  }
  if (!(options.q_window_q0 > 0.0) || !(options.marginal_window_q0 >= options.q_window_q0)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < q_window_q0 <= marginal_window_q0");
  }
  double extent = 2.0 * aperture.support_halfwidth();
  if (const auto* s = aperture.sampled_data(); s && extent <= 0.0) {
    extent = 2.0 * std::max(std::abs(s->x_um.front()), std::abs(s->x_um.back()));
  }
  if (!(extent > 0.0)) throw Error(ErrorCode::InvalidArgument, "aperture has no extent");

  const auto n = static_cast<double>(options.n_x);
  double step = 0.0;
  double phase = 0.5;  // lattice offset in cells; 0.5 makes the lattice mirror-symmetric
  if (options.window_um) {
    if (!(*options.window_um >= kMinPadding * extent)) {
      throw Error(ErrorCode::InvalidArgument, "window must be at least 4x the aperture extent");
    }
    step = *options.window_um / n;
  } else {
    const double min_step = options.padding_factor * extent / n;
    step = min_step;
    if (const auto* g = aperture.grating_spec()) {
      if (const auto unit = common_unit(g->period_um, g->slit_width_um); unit && *unit >= min_step) {
        double k = 1.0;
        while (*unit / (2.0 * k) >= min_step) k *= 2.0;
        step = *unit / k;
        const double edge = slit_center(*g, 0) - 0.5 * g->slit_width_um;
        phase = frac(edge / step + 0.5);
        if (phase > 1.0 - 1e-9 || phase < 1e-9) phase = 0.0;
      }
    }
  }

  SimulationGrid grid;
  grid.x = XLattice{(phase - 0.5 * n) * step, step, options.n_x};
  if (options.reference_length_um) {
    grid.reference_length_um = *options.reference_length_um;
  } else if (const auto d = aperture.period()) {
    grid.reference_length_um = *d;
  } else {
    grid.reference_length_um = extent;
  }
  if (!(grid.reference_length_um > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "reference length must be positive");
  }
  grid.q0 = kTwoPi / grid.reference_length_um;
  const double dq = grid.q_step();
  grid.map_window = symmetric_window(dq, options.q_window_q0 * grid.q0);
  grid.marginal_window = symmetric_window(dq, options.marginal_window_q0 * grid.q0);
  const auto nyquist = static_cast<std::int64_t>(options.n_x / 2) - 1;
  if (grid.marginal_window.last() > nyquist) {
    grid.marginal_window = QLattice{dq, -nyquist, static_cast<std::size_t>(2 * nyquist + 1)};
  }
  if (grid.map_window.last() > grid.marginal_window.last()) {
    throw Error(ErrorCode::GridTooCoarse, "map q window exceeds the lattice Nyquist range");
  }
  return grid;
}

void require_resolved(const ApertureProfile& aperture, const SimulationGrid& grid) {
  if (const auto s = aperture.feature_size(); s && grid.x.step > *s / 8.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dx = " << grid.x.step << " um exceeds s/8 = " << *s / 8.0
       << " um; raise n_x or shrink the window";
    throw Error(ErrorCode::GridTooCoarse, os.str());
  }
}

}  // namespace corrdiff
