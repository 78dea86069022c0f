#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <unistd.h>
#include <string>
#include <vector>

#include "corrdiff/apertures.hpp"
#include "corrdiff/grid.hpp"
#include "corrdiff/lattice.hpp"

namespace testsupport {

using corrdiff::cplx;
inline const double kPi = std::acos(-1.0);

/// Grating transform summed slit by slit: sum_k A0 exp(i q x_k) * 2 sin(sq/2)/q / sqrt(2 pi).
inline cplx slit_sum_fourier(const corrdiff::GratingSpec& g, double q) {
  const double slit = std::abs(q) < 1e-12 ? g.slit_width_um : 2.0 * std::sin(0.5 * g.slit_width_um * q) / q;
  cplx sum{};
  for (int k = 0; k < g.slit_count; ++k) {
    const double xk = (k - 0.5 * (g.slit_count - 1)) * g.period_um;
    sum += std::exp(cplx(0.0, q * xk));
  }
  return g.amplitude * sum * slit / std::sqrt(2.0 * kPi);
}

/// Exact transform of the piecewise-constant interpolant: each sample fills its cell.
inline cplx cell_riemann(const std::vector<cplx>& f, const corrdiff::XLattice& x, double q) {
  cplx sum{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] != cplx{}) sum += f[j] * std::exp(cplx(0.0, q * x.at(j)));
  }
  const double u = 0.5 * q * x.step;
  const double ff = std::abs(u) < 1e-12 ? 1.0 : std::sin(u) / u;
  return sum * x.step * ff / std::sqrt(2.0 * kPi);
}

/// Composite Simpson rule on [a, b] with n (even) intervals.
template <class F>
double simpson(F f, double a, double b, std::size_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return s * h / 3.0;
}

inline double peak(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

inline std::vector<double> normalized(std::vector<double> v) {
  const double p = peak(v);
  if (p > 0.0) {
    for (double& x : v) x /= p;
  }
  return v;
}

/// Relative error where ref >= floor * max(ref), absolute (in units of max) elsewhere.
struct ProfileError {
  double max_rel = 0.0;
  double max_abs = 0.0;
};
inline ProfileError profile_error(const std::vector<double>& got, const std::vector<double>& ref,
                                  double floor = 1e-6) {
  ProfileError e;
  const double scale = peak(ref);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = std::abs(got[i] - ref[i]);
    if (ref[i] >= floor * scale && scale > 0.0) {
      e.max_rel = std::max(e.max_rel, d / ref[i]);
    } else {
      e.max_abs = std::max(e.max_abs, scale > 0.0 ? d / scale : d);
    }
  }
  return e;
}

/// Gallery grating (d/s = 3.2) in micrometres.
inline corrdiff::GratingSpec figure_grating(int n = 10) { return corrdiff::GratingSpec{1.0, 250.0, 78.125, n}; }

/// Coarse grid used for oracle comparisons (dx = d/32).
inline corrdiff::GridOptions oracle_grid_options() {
  corrdiff::GridOptions o;
  o.n_x = 2048;
  return o;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("corrdiff_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(CORRDIFF_SCENARIO_DIR) / (name + ".ini");
}

}  // namespace testsupport
