#pragma once

#include <string>
#include <vector>

#include "radiopt/config.hpp"

namespace radiopt {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct ManifestFile {
  std::string name;
  std::string checksum;  // fnv1a-64 of the file bytes, hex
};

struct RunManifest {
  nlohmann::json config_echo;
  std::string version;
  double wall_seconds = 0.0;
  bool success = true;  // verify mode: all cases passed
  std::vector<ManifestFile> files;
};

/// Executes the configured mode, writes the output files plus manifest.json
/// into config.output_dir, and returns the manifest.
RunManifest run(const RunConfig& config);

}  // namespace radiopt
