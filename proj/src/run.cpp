#include "corrdiff/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "corrdiff/biphoton.hpp"
#include "corrdiff/error.hpp"
#include "corrdiff/ghost.hpp"
#include "corrdiff/output.hpp"
#include "corrdiff/transform.hpp"

namespace corrdiff {

namespace fs = std::filesystem;

namespace {

class Writer {
 public:
  Writer(fs::path dir, const RunConfig& cfg, double q0, RunManifest& manifest)
      : dir_(std::move(dir)), cfg_(cfg), q0_(q0), manifest_(manifest) {}

  RateMap normalized(const RateMap& m) const {
    return cfg_.output.normalization == Normalization::PeakNormalized ? peak_normalized(m) : m;
  }
  RateProfile normalized(const RateProfile& p) const {
    return cfg_.output.normalization == Normalization::PeakNormalized ? peak_normalized(p) : p;
  }

  void map(const std::string& stem, const RateMap& m) {
    const RateMap n = normalized(m);
    if (cfg_.output.csv) {
      write_map_csv(dir_ / (stem + ".csv"), n, q0_);
      record(stem + ".csv", "map", n.values.size());
    }
    if (cfg_.output.pgm) {
      write_map_pgm(dir_ / (stem + ".pgm"), n);
      record(stem + ".pgm", "image", 0);
    }
  }

  RateProfile profile(const std::string& stem, const RateProfile& p) {
    const RateProfile n = normalized(p);
    if (cfg_.output.csv) {
      write_profile_csv(dir_ / (stem + ".csv"), n, q0_);
      record(stem + ".csv", "profile", n.values.size());
    }
    return n;
  }

  void plot(const std::string& stem, const std::string& title, const std::vector<PlotSeries>& series) {
    if (!cfg_.output.svg) return;
    write_profiles_svg(dir_ / (stem + ".svg"), title, series, q0_, "q / q0");
    record(stem + ".svg", "plot", 0);
  }

  void coherence(const CoherenceMatrix& g, double d) {
    if (cfg_.output.csv) {
      // Row through the lit sample nearest x = 0.
      std::size_t row = 0;
      double best = -1.0;
      for (std::size_t i = 0; i < g.x.size; ++i) {
        const double w = std::abs(g.at(i, i));
        if (w > 0.0 && (best < 0.0 || std::abs(g.x.at(i)) < best)) {
          best = std::abs(g.x.at(i));
          row = i;
        }
      }
      write_coherence_csv(dir_ / "coherence_diagonal.csv", g, d, std::string::npos);
      record("coherence_diagonal.csv", "coherence", g.x.size);
      write_coherence_csv(dir_ / "coherence_row.csv", g, d, row);
      record("coherence_row.csv", "coherence", g.x.size);
    }
    if (cfg_.output.pgm) {
      write_coherence_pgm(dir_ / "coherence.pgm", g);
      record("coherence.pgm", "image", 0);
    }
  }

 private:
  void record(const std::string& file, const std::string& kind, std::size_t rows) {
    manifest_.outputs.push_back(OutputRecord{file, kind, sha256_file(dir_ / file), rows});
  }

  fs::path dir_;
  const RunConfig& cfg_;
  double q0_;
  RunManifest& manifest_;
};

void add_warnings(RunManifest& m, const std::vector<std::string>& w) {
  for (const auto& s : w) {
    if (std::find(m.warnings.begin(), m.warnings.end(), s) == m.warnings.end()) m.warnings.push_back(s);
  }
}

std::string r_label(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", r);
  return buf;
}

OracleRecord oracle_record(const std::string& name, const SpectrumComparison& c) {
  return OracleRecord{name, c.max_rel, c.max_abs, c.passed};
}

// Classical arm amplitude: FFT route against a direct per-point sum.
OracleRecord classical_oracle(const ApertureProfile& a, const SimulationGrid& grid, const QLattice& q) {
  const std::vector<cplx> samples = a.sample(grid.x);
  const CellSpectrum fast = forward_transform(samples, grid.x);
  JointSpectrum f, ref;
  f.rows = ref.rows = QLattice{q.step, 0, 1};
  f.cols = ref.cols = q;
  for (std::size_t i = 0; i < q.size; ++i) {
    const double qi = q.at(i);
    cplx sum{};
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (samples[j] != cplx{}) sum += samples[j] * std::polar(1.0, qi * grid.x.at(j));
    }
    f.values.push_back(fast.at_index(q.index(i)));
    ref.values.push_back(sum * grid.x.step * cell_form_factor(qi, grid.x.step) / std::sqrt(kTwoPi));
  }
  return oracle_record("arm-amplitude", compare_spectra(f, ref));
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path, std::string& header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::getline(in, header);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::size_t value_column_start(const std::string& header) {
  if (header.rfind("q_over_q0,qprime_over_q0", 0) == 0) return 2;
  return 1;
}

}  // namespace

fs::path default_output_root() {
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return fs::path(env);
  return fs::path("corrdiff-out");
}

fs::path scenario_dir() {
  if (const char* env = std::getenv(kScenarioDirEnv); env && *env) return fs::path(env);
  return fs::path(CORRDIFF_SCENARIO_DIR);
}

SimulateResult simulate(const RunConfig& cfg, const SimulateOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SimulateResult result;
  result.out_dir = options.out_dir ? *options.out_dir
                                   : default_output_root() / cfg.output.directory.value_or(cfg.name);

  GridOptions grid_options = cfg.grid;
  if (options.resolution) grid_options.n_x = *options.resolution;
  const ApertureProfile aperture = build_aperture(cfg);
  SimulationGrid grid;
  CorrelationKernel kernel;
  try {
    grid = make_grid(aperture, grid_options);
    kernel = build_kernel(cfg, grid.reference_length_um);
    if (cfg.geometry == Geometry::SameObject || cfg.geometry == Geometry::GhostQuantum) {
      require_resolved(aperture, grid);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::ConfigInvariant, e.detail());
    throw;
  }

  fs::create_directories(result.out_dir);
  RunManifest& m = result.manifest;
  m.version = CORRDIFF_VERSION;
  m.scenario = cfg.name;
  m.geometry = to_string(cfg.geometry);
  m.config_path = cfg.source_path;
  if (!cfg.source_path.empty()) m.config_sha256 = sha256_file(cfg.source_path);
  m.aperture = aperture.describe();
  m.kernel = kernel.describe();
  m.grid = grid.describe();
  m.normalization = to_string(cfg.output.normalization);

  Writer out(result.out_dir, cfg, grid.q0, m);
  const QLattice oracle_q = centred_points(grid.q_step(), kOracleLatticePoints);

  switch (cfg.geometry) {
    case Geometry::SameObject: {
      const Scenario s{aperture, kernel, grid};
      const RateMap r2 = coincidence_map(joint_amplitude(s));
      const RateProfile marginal = one_photon_marginal(r2);
      add_warnings(m, marginal.warnings);
      const RateMap square = r2.restricted(grid.map_window);
      out.map("coincidence_map", square);
      const RateProfile pm = out.profile("marginal", marginal);
      const RateProfile pd = out.profile("diagonal", diagonal_cut(square, 1));
      const RateProfile pa = out.profile("antidiagonal", diagonal_cut(square, -1));
      out.plot("profiles", cfg.name, {{"R1(q)", &pm}, {"R2(q, q)", &pd}, {"R2(q, -q)", &pa}});
      if (cfg.output.coherence) out.coherence(first_order_coherence(s), grid.reference_length_um);
      if (!cfg.sweep_r.empty()) {
        const auto sweep = r_sweep(s, cfg.sweep_r);
        std::vector<RateProfile> diag, marg;
        for (const auto& e : sweep) {
          add_warnings(m, e.marginal.warnings);
          marg.push_back(out.profile("sweep_r" + r_label(e.r) + "_marginal", e.marginal));
          diag.push_back(out.profile("sweep_r" + r_label(e.r) + "_diagonal", e.diagonal));
        }
        std::vector<PlotSeries> sd, sm;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
          sd.push_back({"r = " + r_label(sweep[i].r), &diag[i]});
          sm.push_back({"r = " + r_label(sweep[i].r), &marg[i]});
        }
        out.plot("sweep_diagonal", cfg.name + ": R2(q, q)", sd);
        out.plot("sweep_marginal", cfg.name + ": R1(q)", sm);
      }
      if (options.oracle) {
        m.oracle.push_back(oracle_record("joint-amplitude", compare_spectra(joint_amplitude(s, oracle_q, oracle_q),
                                                                          brute_force_joint(s, oracle_q))));
      }
      break;
    }
    case Geometry::GhostQuantum: {
      TwoArmScenario s{aperture, std::nullopt, kernel, grid, SourceModel::Quantum};
      if (!cfg.arm_b_open) s.arm_b = aperture;
      const RateMap r2 = coincidence_map(ghost_joint_amplitude(s));
      out.map("coincidence_map", r2);
      const RateProfile pc = out.profile("cross_section_q0", cross_section(r2, Line::RowConstant, 0.0));
      out.plot("profiles", cfg.name, {{"R2(0, q')", &pc}});
      if (options.oracle) {
        m.oracle.push_back(oracle_record("ghost-joint-amplitude",
                                         compare_spectra(ghost_joint_amplitude(s, oracle_q, oracle_q),
                                                         ghost_brute_force(s, oracle_q, oracle_q))));
      }
      break;
    }
    case Geometry::GhostClassical:
    case Geometry::SameObjectClassical: {
      TwoArmScenario s{aperture, std::nullopt, kernel, grid, SourceModel::ClassicalMomentumCorrelated};
      if (!cfg.arm_b_open) s.arm_b = aperture;
      const RateMap r2 = classical_coincidence_map(s);
      add_warnings(m, r2.warnings);
      out.map("coincidence_map", r2);
      if (cfg.geometry == Geometry::GhostClassical) {
        const RateProfile pc = out.profile("cross_section_q0", cross_section(r2, Line::RowConstant, 0.0));
        out.plot("profiles", cfg.name, {{"R2(0, q')", &pc}});
      } else {
        const RateProfile pd = out.profile("diagonal", diagonal_cut(r2, 1));
        const RateProfile pa = out.profile("antidiagonal", diagonal_cut(r2, -1));
        out.plot("profiles", cfg.name, {{"R2(q, q)", &pd}, {"R2(q, -q)", &pa}});
      }
      if (options.oracle) m.oracle.push_back(classical_oracle(aperture, grid, oracle_q));
      break;
    }
  }

  for (const auto& o : m.oracle) result.oracle_passed = result.oracle_passed && o.passed;
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  save_manifest(result.out_dir / "manifest.json", m);
  return result;
}

DiffReport diff_manifests(const fs::path& pa, const fs::path& pb, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
  const RunManifest a = load_manifest(pa);
  const RunManifest b = load_manifest(pb);
  auto mismatch = [](const std::string& what) { throw Error(ErrorCode::SchemaMismatch, what); };
  if (a.geometry != b.geometry) mismatch("geometry differs: " + a.geometry + " vs " + b.geometry);
  if (a.grid != b.grid) mismatch("grid differs: " + a.grid + " vs " + b.grid);
  if (a.normalization != b.normalization) mismatch("normalization differs");

  std::map<std::string, const OutputRecord*> fa, fb;
  for (const auto& o : a.outputs) {
    if (o.file.size() > 4 && o.file.ends_with(".csv")) fa[o.file] = &o;
  }
  for (const auto& o : b.outputs) {
    if (o.file.size() > 4 && o.file.ends_with(".csv")) fb[o.file] = &o;
  }
  for (const auto& [name, rec] : fa) {
    if (!fb.count(name)) mismatch("output " + name + " missing from " + pb.string());
  }
  for (const auto& [name, rec] : fb) {
    if (!fa.count(name)) mismatch("output " + name + " missing from " + pa.string());
  }

  DiffReport report;
  const fs::path da = pa.parent_path();
  const fs::path db = pb.parent_path();
  for (const auto& [name, rec] : fa) {
    for (const auto& [dir, r] : {std::pair{da, rec}, std::pair{db, fb.at(name)}}) {
      if (sha256_file(dir / name) != r->sha256) report.notes.push_back((dir / name).string() + " does not match its manifest checksum");
    }
    std::string ha, hb;
    const auto ra = read_csv(da / name, ha);
    const auto rb = read_csv(db / name, hb);
    if (ha != hb) mismatch(name + ": header differs");
    if (ra.size() != rb.size()) mismatch(name + ": row count differs");
    const std::size_t first_value = value_column_start(ha);
    DiffEntry e;
    e.file = name;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      if (ra[i].size() != rb[i].size()) mismatch(name + ": column count differs at row " + std::to_string(i + 1));
      for (std::size_t c = 0; c < first_value && c < ra[i].size(); ++c) {
        if (ra[i][c] != rb[i][c]) mismatch(name + ": axis differs at row " + std::to_string(i + 1));
      }
      for (std::size_t c = first_value; c < ra[i].size(); ++c) {
        const double x = std::strtod(ra[i][c].c_str(), nullptr);
        const double y = std::strtod(rb[i][c].c_str(), nullptr);
        const double d = std::abs(x - y);
        const double s = std::max(std::abs(x), std::abs(y));
        e.max_abs = std::max(e.max_abs, d);
        if (s > 0.0) e.max_rel = std::max(e.max_rel, d / s);
      }
    }
    e.within = e.max_abs <= tol;
    report.within = report.within && e.within;
    report.entries.push_back(e);
  }
  return report;
}

std::vector<ScenarioInfo> list_scenarios(const fs::path& dir) {
  std::vector<ScenarioInfo> out;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "scenario directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ini") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    ScenarioInfo info;
    info.file = f.string();
    try {
      const RunConfig cfg = load_config(f.string());
      info.name = cfg.name;
      info.geometry = to_string(cfg.geometry);
      info.description = cfg.description;
    } catch (const Error& e) {
      info.name = f.stem().string();
      info.description = std::string("(invalid: ") + e.what() + ")";
    }
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace corrdiff
