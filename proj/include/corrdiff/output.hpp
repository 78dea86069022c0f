#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "corrdiff/biphoton.hpp"
#include "corrdiff/spectra.hpp"

namespace corrdiff {

/// Profile CSV with columns <axis_name>,value; axis divided by `unit`.
void write_profile_csv(const std::filesystem::path& path, const RateProfile& p, double unit,
                       const std::string& axis_name = "q_over_q0");
/// Map CSV with columns q_over_q0,qprime_over_q0,value (row-major over q).
void write_map_csv(const std::filesystem::path& path, const RateMap& m, double q0);
/// 8-bit binary graymap: q left to right, q' bottom to top, brighter = larger.
void write_map_pgm(const std::filesystem::path& path, const RateMap& m);
/// |g1| graymap.
void write_coherence_pgm(const std::filesystem::path& path, const CoherenceMatrix& g);
/// x_over_d,re,im along row `row` of g1, or along the diagonal when row is npos.
void write_coherence_csv(const std::filesystem::path& path, const CoherenceMatrix& g, double d,
                         std::size_t row);

struct PlotSeries {
  std::string label;
  const RateProfile* profile = nullptr;
};
/// Line plot of one or more profiles against axis / unit.
void write_profiles_svg(const std::filesystem::path& path, const std::string& title,
                        const std::vector<PlotSeries>& series, double unit, const std::string& axis_label);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Fixed "%.17g" rendering used for every number written to disk.
std::string format_number(double v);

}  // namespace corrdiff
