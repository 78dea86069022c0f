#include "corrdiff/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "corrdiff/error.hpp"

namespace corrdiff {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

unsigned char gray(double v, double peak) {
  if (!(peak > 0.0)) return 0;
  return static_cast<unsigned char>(std::clamp(std::lround(255.0 * v / peak), 0L, 255L));
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(const fs::path& path, const RateProfile& p, double unit, const std::string& axis_name) {
  auto out = open_out(path);
  out << axis_name << ",value\n";
  for (std::size_t i = 0; i < p.axis.size(); ++i) {
    out << format_number(p.axis[i] / unit) << ',' << format_number(p.values[i]) << '\n';
  }
  finish(out, path);
}

void write_map_csv(const fs::path& path, const RateMap& m, double q0) {
  auto out = open_out(path);
  out << "q_over_q0,qprime_over_q0,value\n";
  const std::vector<double> qs = m.rows.values();
  const std::vector<double> qps = m.cols.values();
  for (std::size_t i = 0; i < m.rows.size; ++i) {
    const std::string q = format_number(qs[i] / q0);
    for (std::size_t j = 0; j < m.cols.size; ++j) {
      out << q << ',' << format_number(qps[j] / q0) << ',' << format_number(m.at(i, j)) << '\n';
    }
  }
  finish(out, path);
}

void write_map_pgm(const fs::path& path, const RateMap& m) {
  auto out = open_out(path);
  const double peak = m.values.empty() ? 0.0 : *std::max_element(m.values.begin(), m.values.end());
  out << "P5\n" << m.rows.size << ' ' << m.cols.size << "\n255\n";
  std::vector<unsigned char> line(m.rows.size);
  for (std::size_t r = 0; r < m.cols.size; ++r) {
    const std::size_t j = m.cols.size - 1 - r;
    for (std::size_t i = 0; i < m.rows.size; ++i) line[i] = gray(m.at(i, j), peak);
    out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(line.size()));
  }
  finish(out, path);
}

void write_coherence_pgm(const fs::path& path, const CoherenceMatrix& g) {
  auto out = open_out(path);
  const std::size_t n = g.x.size;
  double peak = 0.0;
  for (const cplx& v : g.values) peak = std::max(peak, std::abs(v));
  out << "P5\n" << n << ' ' << n << "\n255\n";
  std::vector<unsigned char> line(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = n - 1 - r;
    for (std::size_t i = 0; i < n; ++i) line[i] = gray(std::abs(g.at(i, j)), peak);
    out.write(reinterpret_cast<const char*>(line.data()), static_cast<std::streamsize>(n));
  }
  finish(out, path);
}

void write_coherence_csv(const fs::path& path, const CoherenceMatrix& g, double d, std::size_t row) {
  auto out = open_out(path);
  out << "x_over_d,re,im\n";
  for (std::size_t j = 0; j < g.x.size; ++j) {
    const cplx v = row == std::string::npos ? g.at(j, j) : g.at(row, j);
    out << format_number(g.x.at(j) / d) << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << '\n';
  }
  finish(out, path);
}

void write_profiles_svg(const fs::path& path, const std::string& title, const std::vector<PlotSeries>& series,
                        double unit, const std::string& axis_label) {
  static const char* const kColours[] = {"#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#17202a"};
  const double w = 720, h = 420, left = 60, right = 20, top = 40, bottom = 50;
  double x_lo = 0, x_hi = 1, y_hi = 0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.profile->axis.size(); ++i) {
      const double x = s.profile->axis[i] / unit;
      if (first) x_lo = x_hi = x;
      first = false;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_hi = std::max(y_hi, s.profile->values[i]);
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (!(y_hi > 0.0)) y_hi = 1.0;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * (w - left - right); };
  auto py = [&](double y) { return h - bottom - y / y_hi * (h - top - bottom); };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << (w - left - right) << "\" height=\""
     << (h - top - bottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (long t = static_cast<long>(std::ceil(x_lo)); t <= static_cast<long>(std::floor(x_hi)); ++t) {
    os << "<line x1=\"" << px(t) << "\" y1=\"" << h - bottom << "\" x2=\"" << px(t) << "\" y2=\""
       << h - bottom + 5 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << px(t) << "\" y=\"" << h - bottom + 18
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  os << "<text x=\"" << (w / 2) << "\" y=\"" << h - 10
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << axis_label << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& p = *series[k].profile;
    const char* colour = kColours[k % 6];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < p.axis.size(); ++i) os << px(p.axis[i] / unit) << ',' << py(p.values[i]) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << w - right - 150 << "\" y=\"" << top + 16 + 14 * static_cast<double>(k)
       << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << colour << "\">" << series[k].label
       << "</text>\n";
  }
  os << "</svg>\n";
  auto out = open_out(path);
  out << os.str();
  finish(out, path);
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
    throw Error(ErrorCode::Io, "sha256 failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
  return os.str();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

}  // namespace corrdiff
