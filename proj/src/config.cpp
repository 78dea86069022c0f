#include "corrdiff/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "corrdiff/error.hpp"

namespace corrdiff {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"scenario", {"name", "description"}},
    {"aperture", {"kind", "A0", "d_um", "s_um", "N", "samples_csv", "reference_um"}},
    {"correlation", {"kind", "r", "width_convention", "samples_csv"}},
    {"grid", {"n_x", "window_um", "padding_factor", "q_window_q0", "marginal_window_q0"}},
    {"output", {"directory", "formats", "normalization", "coherence"}},
    {"sweep", {"r"}},
    {"arm_b", {"kind"}},
};

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ConfigParse, what); }
[[noreturn]] void invariant_fail(const std::string& what) { throw Error(ErrorCode::ConfigInvariant, what); }

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    parse_fail("'" + key + "' expects a number, got '" + raw + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    parse_fail("'" + key + "' expects an integer, got '" + raw + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  parse_fail("'" + key + "' expects true/false, got '" + raw + "'");
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(raw);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& path) const {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
    return std::nullopt;
  }
  double number(const std::string& path, double fallback) const {
    const auto v = get(path);
    return v ? to_double(path, *v) : fallback;
  }

 private:
  const pt::ptree& tree_;
};

std::string resolve(const std::string& base_dir, const std::string& file) {
  fs::path p(file);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  if (!fs::exists(p)) invariant_fail("referenced file does not exist: " + p.string());
  return p.lexically_normal().string();
}

}  // namespace

Geometry parse_geometry(const std::string& name) {
  if (name == "same_object") return Geometry::SameObject;
  if (name == "ghost_quantum") return Geometry::GhostQuantum;
  if (name == "ghost_classical") return Geometry::GhostClassical;
  if (name == "same_object_classical") return Geometry::SameObjectClassical;
  parse_fail("unknown geometry '" + name + "'");
}

const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::SameObject: return "same_object";
    case Geometry::GhostQuantum: return "ghost_quantum";
    case Geometry::GhostClassical: return "ghost_classical";
    case Geometry::SameObjectClassical: return "same_object_classical";
  }
  return "?";
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    parse_fail(std::string("INI syntax: ") + e.what());
  }

  std::size_t geometry_keys = 0;
  for (const auto& [section, node] : tree) {
    if (node.empty()) {
      if (section != "geometry") parse_fail("unknown top-level key '" + section + "'");
      ++geometry_keys;
      continue;
    }
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end()) parse_fail("unknown section [" + section + "]");
    for (const auto& [key, value] : node) {
      if (!known->second.count(key)) parse_fail("unknown key '" + key + "' in [" + section + "]");
    }
  }
  if (geometry_keys != 1) invariant_fail("config must name exactly one geometry");

  const Reader r(tree);
  RunConfig cfg;
  cfg.geometry = parse_geometry(*r.get("geometry"));
  cfg.name = r.get("scenario.name").value_or("scenario");
  cfg.description = r.get("scenario.description").value_or("");
  if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
    invariant_fail("scenario name must be a plain non-empty identifier");
  }

  cfg.aperture.kind = r.get("aperture.kind").value_or("grating");
  if (cfg.aperture.kind == "grating") {
    GratingSpec& g = cfg.aperture.grating;
    g.amplitude = r.number("aperture.A0", g.amplitude);
    g.period_um = r.number("aperture.d_um", g.period_um);
    g.slit_width_um = r.number("aperture.s_um", g.slit_width_um);
    if (const auto n = r.get("aperture.N")) g.slit_count = static_cast<int>(to_integer("aperture.N", *n));
    try {
      validate(g);
    } catch (const Error& e) {
      invariant_fail(e.detail());
    }
  } else if (cfg.aperture.kind == "sampled") {
    const auto file = r.get("aperture.samples_csv");
    if (!file) invariant_fail("sampled aperture needs aperture.samples_csv");
    cfg.aperture.samples_csv = resolve(base_dir, *file);
  } else {
    parse_fail("unknown aperture.kind '" + cfg.aperture.kind + "'");
  }
  if (const auto ref = r.get("aperture.reference_um")) {
    const double v = to_double("aperture.reference_um", *ref);
    if (!(v > 0.0)) invariant_fail("aperture.reference_um must be positive");
    cfg.grid.reference_length_um = v;
  }

  cfg.correlation.kind = r.get("correlation.kind").value_or("constant");
  const std::set<std::string> kernels = {"constant", "dirac", "gaussian", "sampled"};
  if (!kernels.count(cfg.correlation.kind)) parse_fail("unknown correlation.kind '" + cfg.correlation.kind + "'");
  cfg.correlation.r = r.number("correlation.r", cfg.correlation.r);
  if (const auto c = r.get("correlation.width_convention")) {
    try {
      cfg.correlation.convention = parse_width_convention(*c);
    } catch (const Error& e) {
      parse_fail(e.detail());
    }
  }
  if (cfg.correlation.kind == "gaussian" && !(cfg.correlation.r > 0.0)) invariant_fail("correlation.r must be positive");
  if (cfg.correlation.kind == "sampled") {
    const auto file = r.get("correlation.samples_csv");
    if (!file) invariant_fail("sampled correlation needs correlation.samples_csv");
    cfg.correlation.samples_csv = resolve(base_dir, *file);
  }

  if (const auto n = r.get("grid.n_x")) {
    const long long v = to_integer("grid.n_x", *n);
    if (v < 2) invariant_fail("grid.n_x must be >= 2");
    cfg.grid.n_x = static_cast<std::size_t>(v);
  }
  if (const auto w = r.get("grid.window_um")) cfg.grid.window_um = to_double("grid.window_um", *w);
  cfg.grid.padding_factor = r.number("grid.padding_factor", cfg.grid.padding_factor);
  cfg.grid.q_window_q0 = r.number("grid.q_window_q0", cfg.grid.q_window_q0);
  cfg.grid.marginal_window_q0 = r.number("grid.marginal_window_q0", cfg.grid.marginal_window_q0);
  if (!(cfg.grid.padding_factor >= 4.0)) invariant_fail("grid.padding_factor must be >= 4");
  if (!(cfg.grid.q_window_q0 > 0.0) || !(cfg.grid.marginal_window_q0 >= cfg.grid.q_window_q0)) {
    invariant_fail("need 0 < grid.q_window_q0 <= grid.marginal_window_q0");
  }

  cfg.output.directory = r.get("output.directory");
  if (const auto f = r.get("output.formats")) {
    cfg.output.csv = cfg.output.pgm = cfg.output.svg = false;
    for (const auto& item : split_list(*f)) {
      if (item == "csv") cfg.output.csv = true;
      else if (item == "pgm") cfg.output.pgm = true;
      else if (item == "svg") cfg.output.svg = true;
      else parse_fail("unknown output format '" + item + "'");
    }
  }
  if (const auto n = r.get("output.normalization")) {
    if (*n == "peak") cfg.output.normalization = Normalization::PeakNormalized;
    else if (*n == "raw") cfg.output.normalization = Normalization::Raw;
    else parse_fail("output.normalization must be peak or raw");
  }
  if (const auto c = r.get("output.coherence")) cfg.output.coherence = to_bool("output.coherence", *c);

  if (const auto list = r.get("sweep.r")) {
    for (const auto& item : split_list(*list)) {
      const double v = to_double("sweep.r", item);
      if (!(v > 0.0)) invariant_fail("sweep r values must be strictly positive");
      cfg.sweep_r.push_back(v);
    }
    if (cfg.sweep_r.empty()) invariant_fail("sweep.r is empty");
    if (cfg.geometry != Geometry::SameObject) invariant_fail("r sweeps apply to the same_object geometry");
  }

  if (const auto b = r.get("arm_b.kind")) {
    if (*b == "open") cfg.arm_b_open = true;
    else if (*b == "same") cfg.arm_b_open = false;
    else parse_fail("arm_b.kind must be open or same");
  }
  if (cfg.geometry == Geometry::SameObjectClassical) cfg.arm_b_open = false;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig cfg = parse_config(text.str(), fs::path(path).parent_path().string().empty()
                                               ? std::string(".")
                                               : fs::path(path).parent_path().string());
  cfg.source_path = path;
  return cfg;
}

ApertureProfile build_aperture(const RunConfig& cfg) {
  if (cfg.aperture.kind == "grating") return ApertureProfile::grating(cfg.aperture.grating);
  return load_sampled_aperture(cfg.aperture.samples_csv);
}

CorrelationKernel build_kernel(const RunConfig& cfg, double reference_length_um) {
  const auto& c = cfg.correlation;
  if (c.kind == "constant") return CorrelationKernel::constant();
  if (c.kind == "dirac") return CorrelationKernel::dirac();
  if (c.kind == "gaussian") return CorrelationKernel::gaussian(c.r, reference_length_um, c.convention);
  return load_sampled_kernel(c.samples_csv);
}

}  // namespace corrdiff
