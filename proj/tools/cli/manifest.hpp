#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cse::cli {

// Written as `<output>.manifest.json` next to every run's outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  std::uint64_t seed = 0;
  std::map<std::string, double> timings;

  // Short hex digest of everything except timings.
  std::string run_id() const;
  nlohmann::json to_json() const;
};

std::filesystem::path manifest_path_for(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace cse::cli
