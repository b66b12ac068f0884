#include "limroots/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <memory>

#include "limroots/error.hpp"
#include "limroots/io.hpp"

namespace limroots {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorKind::Unsupported, "SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string graph_hash(const CoxeterGraph& g) { return sha256_hex(graph_to_json(g)); }

nlohmann::json RunManifest::to_json() const {
  return {{"tool_version", kToolVersion},
          {"command", command},
          {"graph", graph},
          {"graph_hash", graph_hash},
          {"budgets", budgets},
          {"tolerances", tolerances},
          {"summary", summary},
          {"outputs", output_digests},
          {"wall_seconds", wall_seconds},
          {"status", status}};
}

void RunManifest::add_output(const std::string& path, std::string_view contents) {
  output_digests[path] = sha256_hex(contents);
}

}  // namespace limroots
