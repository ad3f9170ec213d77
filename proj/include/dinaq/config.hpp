#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dinaq {

/// Recognized config keys. Anything else in a config file is an error.
const std::set<std::string>& known_config_keys();

/// Flat `key = value` configuration with '#' comments. CLI flags land here
/// as overrides after the file is read.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::filesystem::path& path);
  static KeyValueConfig parse_string(const std::string& text);

  void set(const std::string& key, std::string value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::optional<std::string> get_optional(const std::string& key) const;

  int get_int(const std::string& key) const;
  int get_int_or(const std::string& key, int fallback) const;
  double get_double(const std::string& key) const;
  std::uint64_t get_uint64_or(const std::string& key, std::uint64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;

  /// Comma-separated lists.
  std::vector<int> get_int_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace dinaq
