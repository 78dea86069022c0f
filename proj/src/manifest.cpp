#include "corrdiff/manifest.hpp"

#include <fstream>
#include <json.hpp>

#include "corrdiff/error.hpp"

namespace corrdiff {

using nlohmann::json;

void save_manifest(const std::filesystem::path& path, const RunManifest& m) {
  json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["scenario"] = m.scenario;
  j["geometry"] = m.geometry;
  j["config_path"] = m.config_path;
  j["config_sha256"] = m.config_sha256;
  j["aperture"] = m.aperture;
  j["kernel"] = m.kernel;
  j["grid"] = m.grid;
  j["normalization"] = m.normalization;
  j["outputs"] = json::array();
  for (const auto& o : m.outputs) {
    j["outputs"].push_back({{"file", o.file}, {"kind", o.kind}, {"sha256", o.sha256}, {"rows", o.rows}});
  }
  j["warnings"] = m.warnings;
  j["oracle"] = json::array();
  for (const auto& o : m.oracle) {
    j["oracle"].push_back({{"name", o.name}, {"max_rel", o.max_rel}, {"max_abs", o.max_abs}, {"passed", o.passed}});
  }
  j["wall_time_s"] = m.wall_time_s;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

RunManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, "manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.scenario = j.at("scenario").get<std::string>();
    m.geometry = j.at("geometry").get<std::string>();
    m.config_path = j.value("config_path", "");
    m.config_sha256 = j.at("config_sha256").get<std::string>();
    m.aperture = j.value("aperture", "");
    m.kernel = j.value("kernel", "");
    m.grid = j.at("grid").get<std::string>();
    m.normalization = j.value("normalization", "");
    for (const auto& o : j.at("outputs")) {
      m.outputs.push_back(OutputRecord{o.at("file").get<std::string>(), o.at("kind").get<std::string>(),
                                       o.at("sha256").get<std::string>(), o.value("rows", std::size_t{0})});
    }
    m.warnings = j.value("warnings", std::vector<std::string>{});
    if (j.contains("oracle")) {
      for (const auto& o : j.at("oracle")) {
        m.oracle.push_back(OracleRecord{o.at("name").get<std::string>(), o.at("max_rel").get<double>(),
                                        o.at("max_abs").get<double>(), o.at("passed").get<bool>()});
      }
    }
    m.wall_time_s = j.value("wall_time_s", 0.0);
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaMismatch, "manifest " + path.string() + " is missing fields: " + e.what());
  }
}

}  // namespace corrdiff
