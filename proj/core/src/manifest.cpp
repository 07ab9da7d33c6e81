#include "critwave/manifest.hpp"

#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace critwave {

using nlohmann::json;

std::string utc_now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::write(const std::filesystem::path& dir) const {
  json j;
  j["config_hash"] = config_hash;
  j["artifact_version"] = artifact_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["status"] = status;
  j["produced_files"] = produced_files;
  j["headline"] = headline;
  j["warnings"] = warnings;

  const auto tmp = dir / "manifest.json.tmp";
  const auto final_path = dir / "manifest.json";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, final_path);
}

RunManifest RunManifest::load(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("no manifest in " + dir.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("bad manifest in " + dir.string() + ": " + e.what());
  }
  RunManifest m;
  m.config_hash = j.value("config_hash", "");
  m.artifact_version = j.value("artifact_version", "");
  m.started_at = j.value("started_at", "");
  m.finished_at = j.value("finished_at", "");
  m.status = j.value("status", "");
  m.produced_files = j.value("produced_files", std::vector<std::string>{});
  m.headline = j.value("headline", std::map<std::string, double>{});
  m.warnings = j.value("warnings", std::vector<std::string>{});
  return m;
}

}  // namespace critwave
