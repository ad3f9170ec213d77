#include "dinaq/manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "dinaq/errors.hpp"

namespace dinaq {

std::string fnv1a_hex(std::span<const std::uint8_t> bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

std::string fnv1a_hex(const std::string& text) {
  return fnv1a_hex(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["config"] = manifest.config;
  doc["seed"] = manifest.seed;
  doc["chain_streams"] = manifest.chain_streams;
  doc["input_hashes"] = manifest.input_hashes;
  doc["outputs"] = manifest.outputs;
  doc["wall_clock_seconds"] = manifest.wall_clock_seconds;
  if (manifest.has_relabel) {
    doc["relabel"] = {{"rounds", manifest.relabel_rounds},
                      {"converged", manifest.relabel_converged}};
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace dinaq
