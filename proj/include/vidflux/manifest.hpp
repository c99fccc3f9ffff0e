#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace vidflux {

inline constexpr const char* kToolVersion = "vidflux 0.1.0";

// Reproducibility record embedded in every emitted report: the command, the
// full effective configuration, and content digests of the input files.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64:<hex>
  std::string tool_version = kToolVersion;

  nlohmann::json to_json() const;
};

// FNV-1a 64-bit over raw bytes, rendered as "fnv1a64:<16 hex digits>".
std::string content_digest(const std::string& bytes);

}  // namespace vidflux
