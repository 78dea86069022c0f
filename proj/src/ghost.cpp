#include "corrdiff/ghost.hpp"

#include <algorithm>
#include <cmath>

#include "corrdiff/error.hpp"
#include "corrdiff/transform.hpp"

namespace corrdiff {

namespace {

TwoArmField ghost_field(const TwoArmScenario& s) {
  TwoArmField f;
  f.x = s.grid.x;
  f.a = s.arm_a.sample(s.grid.x);
  if (s.arm_b) f.b = s.arm_b->sample(s.grid.x);
  f.prefactor = 1.0 / (2.0 * kTwoPi);
  f.symmetric = false;
  return f;
}

Provenance ghost_provenance(const TwoArmScenario& s, const char* geometry) {
  Provenance p;
  p.aperture = "A=" + s.arm_a.describe() + "; B=" + (s.arm_b ? s.arm_b->describe() : std::string("open"));
  p.kernel = s.kernel.describe();
  p.geometry = geometry;
  p.grid = s.grid.describe();
  return p;
}

void require_quantum(const TwoArmScenario& s) {
  if (s.source != SourceModel::Quantum) {
    throw Error(ErrorCode::InvalidArgument, "ghost joint amplitude needs the quantum source model");
  }
  require_resolved(s.arm_a, s.grid);
  if (s.arm_b) require_resolved(*s.arm_b, s.grid);
}

}  // namespace

JointSpectrum ghost_joint_amplitude(const TwoArmScenario& s, const QLattice& rows, const QLattice& cols) {
  require_quantum(s);
  JointSpectrum out = fast_joint(ghost_field(s), s.kernel, rows, cols);
  const std::string method = out.provenance.method;
  out.provenance = ghost_provenance(s, "ghost_quantum");
  out.provenance.method = method;
  return out;
}

JointSpectrum ghost_joint_amplitude(const TwoArmScenario& s) {
  return ghost_joint_amplitude(s, s.grid.map_window, s.grid.map_window);
}

JointSpectrum ghost_brute_force(const TwoArmScenario& s, const QLattice& rows, const QLattice& cols) {
  require_quantum(s);
  JointSpectrum out = brute_force_joint(ghost_field(s), s.kernel, rows, cols);
  out.provenance = ghost_provenance(s, "ghost_quantum");
  out.provenance.method = "brute-force";
  return out;
}

std::vector<double> classical_rate(const ApertureProfile& aperture, const SimulationGrid& grid,
                                   std::int64_t first, std::int64_t last) {
  const CellSpectrum spec = forward_transform(aperture.sample(grid.x), grid.x);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, last - first + 1)));
  for (std::int64_t k = first; k <= last; ++k) out.push_back(std::norm(spec.at_index(k)));
  return out;
}

RateMap classical_coincidence_map(const TwoArmScenario& s, const QLattice& rows, const QLattice& cols) {
  if (s.source != SourceModel::ClassicalMomentumCorrelated) {
    throw Error(ErrorCode::InvalidArgument, "classical map needs the momentum-correlated source model");
  }
  require_resolved(s.arm_a, s.grid);
  const QLattice& scan = s.grid.marginal_window;
  const double dq = s.grid.q_step();

  // R_A(k - m) for k in rows, m in scan.
  const std::int64_t a_first = rows.first - scan.last();
  const std::vector<double> ra = classical_rate(s.arm_a, s.grid, a_first, rows.last() - scan.first);
  std::vector<double> rb;
  std::int64_t b_first = 0;
  if (s.arm_b) {
    b_first = cols.first - scan.last();
    rb = classical_rate(*s.arm_b, s.grid, b_first, cols.last() - scan.first);
  }

  RateMap map;
  map.rows = rows;
  map.cols = cols;
  map.values.assign(rows.size * cols.size, 0.0);
  const std::size_t ns = scan.size;
  auto weight = [&](std::size_t m) { return (m == 0 || m + 1 == ns) ? 0.5 * dq : dq; };
  double total = 0.0, edge = 0.0;

  for (std::size_t i = 0; i < rows.size; ++i) {
    const std::int64_t k = rows.index(i);
    for (std::size_t j = 0; j < cols.size; ++j) {
      const std::int64_t l = cols.index(j);
      double sum = 0.0;
      if (!s.arm_b) {
        // Delta at q' - q0 = 0 picks the single scan node m = l.
        if (scan.contains(l)) {
          const std::size_t m = scan.position(l);
          sum = weight(m) / dq * ra[static_cast<std::size_t>(k - l - a_first)];
          if (m == 0 || m + 1 == ns) edge += sum;
        }
      } else {
        for (std::size_t m = 0; m < ns; ++m) {
          const std::int64_t q0 = scan.index(m);
          const double v = weight(m) * ra[static_cast<std::size_t>(k - q0 - a_first)] *
                           rb[static_cast<std::size_t>(l - q0 - b_first)];
          sum += v;
          if (m == 0 || m + 1 == ns) edge += v;
        }
      }
      map.values[i * cols.size + j] = sum;
      total += sum;
    }
  }
  if (total > 0.0 && edge / total >= 1e-4) {
    map.warnings.push_back("scan truncation: boundary scan nodes carry " + std::to_string(edge / total) +
                           " of the map total (budget 1e-4)");
  }
  return map;
}

RateMap classical_coincidence_map(const TwoArmScenario& s) {
  return classical_coincidence_map(s, s.grid.map_window, s.grid.map_window);
}

RateProfile cross_section(const RateMap& map, Line line, double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "cross-section value must be finite");
  const double dq_r = map.rows.step;
  const double dq_c = map.cols.step;
  auto interp_at = [&](double pr, double pc, double& out) {
    // pr, pc are fractional positions inside the map.
    const double eps = 1e-9;
    if (pr < -eps || pc < -eps || pr > static_cast<double>(map.rows.size - 1) + eps ||
        pc > static_cast<double>(map.cols.size - 1) + eps) {
      return false;
    }
    auto snap = [&](double t) { return std::abs(t - std::nearbyint(t)) < eps ? std::nearbyint(t) : t; };
    pr = std::clamp(snap(pr), 0.0, static_cast<double>(map.rows.size - 1));
    pc = std::clamp(snap(pc), 0.0, static_cast<double>(map.cols.size - 1));
    const auto i0 = static_cast<std::size_t>(std::floor(pr));
    const auto j0 = static_cast<std::size_t>(std::floor(pc));
    const std::size_t i1 = std::min(i0 + 1, map.rows.size - 1);
    const std::size_t j1 = std::min(j0 + 1, map.cols.size - 1);
    const double tr = pr - static_cast<double>(i0);
    const double tc = pc - static_cast<double>(j0);
    auto v = [&](std::size_t i, std::size_t j, double w) { return w == 0.0 ? 0.0 : w * map.at(i, j); };
    out = v(i0, j0, (1 - tr) * (1 - tc)) + v(i0, j1, (1 - tr) * tc) + v(i1, j0, tr * (1 - tc)) +
          v(i1, j1, tr * tc);
    return true;
  };
  auto row_pos = [&](double q) { return q / dq_r - static_cast<double>(map.rows.first); };
  auto col_pos = [&](double q) { return q / dq_c - static_cast<double>(map.cols.first); };

  RateProfile p;
  p.normalization = map.normalization;
  p.warnings = map.warnings;
  double v = 0.0;
  switch (line) {
    case Line::RowConstant:
      for (std::size_t j = 0; j < map.cols.size; ++j) {
        if (interp_at(row_pos(value), static_cast<double>(j), v)) {
          p.axis.push_back(map.cols.at(j));
          p.values.push_back(v);
        }
      }
      break;
    case Line::ColConstant:
      for (std::size_t i = 0; i < map.rows.size; ++i) {
        if (interp_at(static_cast<double>(i), col_pos(value), v)) {
          p.axis.push_back(map.rows.at(i));
          p.values.push_back(v);
        }
      }
      break;
    case Line::Diagonal:
    case Line::AntiDiagonal: {
      const double sign = line == Line::Diagonal ? 1.0 : -1.0;
      for (std::size_t i = 0; i < map.rows.size; ++i) {
        const double q = map.rows.at(i);
        if (interp_at(static_cast<double>(i), col_pos(sign * q + value), v)) {
          p.axis.push_back(q);
          p.values.push_back(v);
        }
      }
      break;
    }
  }
  if (p.axis.empty()) throw Error(ErrorCode::InvalidArgument, "cross-section line lies outside the map");
  return p;
}

RateProfile mirrored(const RateProfile& p) {
  RateProfile out = p;
  std::reverse(out.axis.begin(), out.axis.end());
  std::reverse(out.values.begin(), out.values.end());
  for (double& q : out.axis) q = -q;
  return out;
}

}  // namespace corrdiff
