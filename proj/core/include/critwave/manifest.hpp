#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace critwave {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Run bookkeeping. Wall-clock timestamps live here and only here; data
// files stay timestamp-free so reruns are byte-identical.
struct RunManifest {
  std::string config_hash;
  std::string artifact_version = kArtifactVersion;
  std::string started_at;   // UTC, ISO 8601
  std::string finished_at;  // UTC, ISO 8601
  std::string status;       // "ok" | "blow-up" | "failed: <reason>"
  std::vector<std::string> produced_files;
  std::map<std::string, double> headline;  // slopes, sups, lifespans, ...
  std::vector<std::string> warnings;

  // Written to <dir>/manifest.json via a temp file + rename.
  void write(const std::filesystem::path& dir) const;
  static RunManifest load(const std::filesystem::path& dir);
};

std::string utc_now_iso8601();

}  // namespace critwave
