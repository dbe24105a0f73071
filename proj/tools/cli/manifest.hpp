#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hurst::cli {

/// Lowercase hex SHA-256 of `bytes`, prefixed "sha256:".
std::string sha256_digest(std::string_view bytes);

/// Provenance sidecar written next to every output.
struct RunManifest {
  std::string command;
  std::string effective_config;
  std::map<std::string, std::string> input_digests;
  std::map<std::string, std::string> output_digests;
  std::string started;
  std::string finished;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  std::string config_hash() const { return sha256_digest(effective_config); }
  nlohmann::ordered_json to_json() const;
};

}  // namespace hurst::cli
