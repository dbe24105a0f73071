#include "manifest.hpp"

#include <array>
#include <memory>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "cli.hpp"

namespace hurst::cli {

std::string sha256_digest(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(),
                 nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
  return out;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "hurst";
  j["tool_version"] = tool_version();
  j["command"] = command;
  j["config_hash"] = config_hash();
  j["effective_config"] = effective_config;
  j["input_digests"] = input_digests;
  j["output_digests"] = output_digests;
  j["started"] = started;
  j["finished"] = finished;
  j["summary"] = summary;
  return j;
}

}  // namespace hurst::cli
