#include "dinaq/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dinaq/errors.hpp"

namespace dinaq {

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "n",         "j",        "k",       "rho",          "rule",    "g",
      "s",         "iterations", "burn_in", "chains",     "seed",    "q_fixture",
      "q_init_path", "q_known", "replications", "workers",
  };
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

void parse_line(const std::string& raw, std::size_t line_no, KeyValueConfig& cfg) {
  std::string line = raw;
  if (const auto comment = line.find('#'); comment != std::string::npos) {
    line.erase(comment);
  }
  line = trim(line);
  if (line.empty()) return;

  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
  }
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty() || value.empty()) {
    throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
  }
  if (!known_config_keys().count(key)) {
    throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  cfg.set(key, value);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) parse_line(line, ++line_no, cfg);
  return cfg;
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  if (!known_config_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
  entries_[key] = std::move(value);
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

std::optional<std::string> KeyValueConfig::get_optional(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {

template <typename T, typename Fn>
T parse_scalar(const std::string& key, const std::string& value, Fn&& convert) {
  try {
    std::size_t consumed = 0;
    const T result = convert(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("trailing characters");
    return result;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "'");
  }
}

}  // namespace

int KeyValueConfig::get_int(const std::string& key) const {
  return parse_scalar<int>(key, get_string(key),
                           [](const std::string& v, std::size_t* c) { return std::stoi(v, c); });
}

int KeyValueConfig::get_int_or(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  return parse_scalar<double>(key, get_string(key),
                              [](const std::string& v, std::size_t* c) { return std::stod(v, c); });
}

std::uint64_t KeyValueConfig::get_uint64_or(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  return parse_scalar<std::uint64_t>(
      key, get_string(key),
      [](const std::string& v, std::size_t* c) { return std::stoull(v, c); });
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = get_string(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, found '" + v + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  return parts;
}

}  // namespace

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const std::string& part : split_csv(get_string(key))) {
    out.push_back(parse_scalar<int>(
        key, part, [](const std::string& v, std::size_t* c) { return std::stoi(v, c); }));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& part : split_csv(get_string(key))) {
    out.push_back(parse_scalar<double>(
        key, part, [](const std::string& v, std::size_t* c) { return std::stod(v, c); }));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

}  // namespace dinaq
