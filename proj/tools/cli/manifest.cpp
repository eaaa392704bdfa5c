#include "cli/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "cse/errors.hpp"

namespace cse::cli {

namespace {

nlohmann::json reproducible_part(const RunManifest& m) {
  return {{"command", m.command}, {"argv", m.argv},     {"config", m.config},
          {"inputs", m.inputs},   {"outputs", m.outputs}, {"seed", m.seed}};
}

}  // namespace

std::string RunManifest::run_id() const {
  // FNV-1a over the canonical JSON dump.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : reproducible_part(*this).dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 12);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j = reproducible_part(*this);
  j["run_id"] = run_id();
  j["timings"] = timings;
  return j;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << manifest.to_json().dump(2) << '\n';
}

}  // namespace cse::cli
