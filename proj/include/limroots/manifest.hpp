#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "limroots/coxeter.hpp"

namespace limroots {

inline constexpr const char* kToolVersion = "0.3.1";

std::string sha256_hex(std::string_view data);
/// Digest of the canonical graph JSON.
std::string graph_hash(const CoxeterGraph& g);

/// Provenance of one CLI run. Everything except wall_seconds and status is a
/// function of the inputs, and outputs are byte-identical across reruns with
/// the same fields.
struct RunManifest {
  std::string command;
  std::string graph;
  std::string graph_hash;
  nlohmann::json budgets = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();
  std::map<std::string, std::string> output_digests;
  double wall_seconds = 0.0;
  std::string status = "ok";

  nlohmann::json to_json() const;
  void add_output(const std::string& path, std::string_view contents);
};

}  // namespace limroots
