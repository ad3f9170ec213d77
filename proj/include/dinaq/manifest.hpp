#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dinaq {

/// Everything needed to re-run a command bit-identically, written next to
/// its outputs as manifest.json.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;       // resolved key-value pairs
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> chain_streams;        // RNG substream per chain
  std::map<std::string, std::string> input_hashes; // fixture/file name -> FNV-1a
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
  int relabel_rounds = 0;      // fit only
  bool relabel_converged = false;
  bool has_relabel = false;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

std::string fnv1a_hex(std::span<const std::uint8_t> bytes);
std::string fnv1a_hex(const std::string& text);

}  // namespace dinaq
