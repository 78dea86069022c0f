#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "corrdiff/error.hpp"
#include "corrdiff/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOverTolerance = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSchema = 4;

int exit_code_for(const corrdiff::Error& e) {
  using corrdiff::ErrorCode;
  switch (e.code()) {
    case ErrorCode::ConfigParse:
    case ErrorCode::Io:
      return kExitParse;
    case ErrorCode::SchemaMismatch:
      return kExitSchema;
    default:
      return kExitInvariant;
  }
}

int run_simulate(const std::string& config, const std::string& out, bool oracle, std::size_t resolution) {
  const corrdiff::RunConfig cfg = corrdiff::load_config(config);
  corrdiff::SimulateOptions opts;
  if (!out.empty()) opts.out_dir = out;
  opts.oracle = oracle;
  if (resolution > 0) opts.resolution = resolution;
  const auto result = corrdiff::simulate(cfg, opts);
  std::cout << "wrote " << result.manifest.outputs.size() << " outputs to " << result.out_dir.string() << "\n";
  for (const auto& w : result.manifest.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& o : result.manifest.oracle) {
    std::printf("oracle %s: max_rel=%.3e max_abs=%.3e %s\n", o.name.c_str(), o.max_rel, o.max_abs,
                o.passed ? "ok" : "FAILED");
  }
  return result.oracle_passed ? kExitOk : kExitInvariant;
}

int run_diff(const std::string& a, const std::string& b, double tol) {
  const auto report = corrdiff::diff_manifests(a, b, tol);
  std::printf("%-36s %14s %14s\n", "file", "max_abs", "max_rel");
  for (const auto& e : report.entries) {
    std::printf("%-36s %14.6e %14.6e%s\n", e.file.c_str(), e.max_abs, e.max_rel, e.within ? "" : "  over tolerance");
  }
  for (const auto& n : report.notes) std::cerr << "note: " << n << "\n";
  return report.within ? kExitOk : kExitOverTolerance;
}

int run_list() {
  for (const auto& s : corrdiff::list_scenarios(corrdiff::scenario_dir())) {
    std::printf("%-28s %-22s %s\n", s.name.c_str(), s.geometry.c_str(), s.description.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon Fraunhofer diffraction under transverse correlation kernels"};
  app.set_version_flag("--version", std::string(CORRDIFF_VERSION));
  app.require_subcommand(1);

  std::string config, out;
  bool oracle = false;
  std::size_t resolution = 0;
  auto* sim = app.add_subcommand("simulate", "run a scenario config");
  sim->add_option("config", config, "scenario INI file")->required();
  sim->add_option("--out", out, std::string("output directory (default $") + corrdiff::kOutputRootEnv + "/<name>)");
  sim->add_flag("--oracle", oracle, "also check the fast path against the brute-force sum");
  sim->add_option("--resolution", resolution, "override grid.n_x")->check(CLI::PositiveNumber);

  std::string manifest_a, manifest_b;
  double tol = 0.0;
  auto* diff = app.add_subcommand("diff", "compare the outputs of two runs");
  diff->add_option("manifest_a", manifest_a)->required();
  diff->add_option("manifest_b", manifest_b)->required();
  diff->add_option("--tol", tol, "largest allowed absolute difference")->required()->check(CLI::NonNegativeNumber);

  auto* list = app.add_subcommand("list-scenarios", "list the bundled scenario gallery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*sim) return run_simulate(config, out, oracle, resolution);
    if (*diff) return run_diff(manifest_a, manifest_b, tol);
    if (*list) return run_list();
  } catch (const corrdiff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
