#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snhet/core_model.hpp"

namespace snhet::experiments {

/// Malformed spec or config file, unknown setting, or a spec that fails validation.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What the setting paths act on: the network plus the first user's placement.
struct Scene {
  NetworkConfig network;
  FirstUserPlacement placement = FixedPlacement{};
};

using Setting = std::pair<std::string, std::string>;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline double parse_number(std::string_view key, std::string_view text) {
  const auto t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [p, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || p != end) throw SpecError(std::string(key) + ": not a number: '" + t + "'");
  return v;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  throw SpecError(std::string(key) + ": expected true/false, got '" + t + "'");
}

inline std::size_t parse_count(std::string_view key, double v) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) throw SpecError(std::string(key) + ": expected a positive integer");
  return static_cast<std::size_t>(v);
}

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  const auto t = trim(text);
  std::uint64_t v = 0;
  const auto* end = t.data() + t.size();
  auto [p, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || p != end)
    throw SpecError(std::string(key) + ": expected a non-negative integer, got '" + t + "'");
  return v;
}

/// Items separated by commas and/or whitespace.
inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct TierPath {
  std::size_t index;
  std::string field;
};

inline bool match_tier_path(std::string_view path, TierPath& out) {
  static const std::regex re(R"(tier\[(\d+)\]\.([a-z_0-9]+))");
  std::cmatch m;
  if (!std::regex_match(path.begin(), path.end(), m, re)) return false;
  out.index = std::stoul(m[1].str());
  out.field = m[2].str();
  return true;
}

inline constexpr std::string_view numeric_paths[] = {"tier_count", "noise_dbm", "noise_linear", "eve_density",
                                                     "eve_density_lambda0", "a_m", "a_n", "oma_mode",
                                                     "first_user_radius"};
inline constexpr std::string_view tier_fields[] = {"power_dbm", "power_linear", "density", "density_lambda0",
                                                   "density_ratio", "alpha", "bias", "noma"};

inline void set_tier_count(NetworkConfig& cfg, std::size_t n) {
  cfg.tiers.resize(n);
  if (!cfg.tier_noma_enabled.empty()) cfg.tier_noma_enabled.resize(n, true);
}

}  // namespace detail

/// True for setting paths that take a number and may therefore be swept.
inline bool is_numeric_path(std::string_view path) {
  detail::TierPath tp;
  if (detail::match_tier_path(path, tp))
    return std::find(std::begin(detail::tier_fields), std::end(detail::tier_fields), tp.field) !=
           std::end(detail::tier_fields);
  return std::find(std::begin(detail::numeric_paths), std::end(detail::numeric_paths), path) !=
         std::end(detail::numeric_paths);
}

/// Sets one numeric field. Boolean fields read v != 0.
inline void apply_numeric(Scene& s, std::string_view path, double v) {
  auto& cfg = s.network;
  const std::string key(path);
  detail::TierPath tp;
  if (detail::match_tier_path(path, tp)) {
    if (tp.index >= cfg.tiers.size())
      throw SpecError(key + ": tier index out of range (have " + std::to_string(cfg.tiers.size()) + " tiers)");
    auto& t = cfg.tiers[tp.index];
    if (tp.field == "power_dbm") t.power_linear = dbm_to_linear(v);
    else if (tp.field == "power_linear") t.power_linear = v;
    else if (tp.field == "density") t.density = v;
    else if (tp.field == "density_lambda0") t.density = v * lambda0;
    else if (tp.field == "density_ratio") t.density = v * cfg.tiers[0].density;
    else if (tp.field == "alpha") t.alpha = v;
    else if (tp.field == "bias") t.bias = v;
    else if (tp.field == "noma") {
      if (cfg.tier_noma_enabled.empty()) cfg.tier_noma_enabled.assign(cfg.tiers.size(), true);
      cfg.tier_noma_enabled[tp.index] = v != 0.0;
    } else {
      throw SpecError(key + ": unknown tier field");
    }
    return;
  }
  if (key == "tier_count") detail::set_tier_count(cfg, detail::parse_count(key, v));
  else if (key == "noise_dbm") cfg.noise_linear = dbm_to_linear(v);
  else if (key == "noise_linear") cfg.noise_linear = v;
  else if (key == "eve_density") cfg.eve_density = v;
  else if (key == "eve_density_lambda0") cfg.eve_density = v * lambda0;
  else if (key == "a_m") cfg.split.a_m = v;
  else if (key == "a_n") cfg.split.a_n = v;
  else if (key == "oma_mode") cfg.oma_mode = v != 0.0;
  else if (key == "first_user_radius") s.placement = FixedPlacement{v};
  else throw SpecError(key + ": unknown setting");
}

/// Sets one field from its text form; accepts every numeric path plus `placement = fixed|random`.
inline void apply_setting(Scene& s, std::string_view path, std::string_view text) {
  const std::string key(path);
  if (key == "placement") {
    const auto mode = detail::lower(detail::trim(text));
    if (mode == "random") s.placement = RandomPlacement{};
    else if (mode == "fixed") {
      if (!is_fixed(s.placement)) s.placement = FixedPlacement{};
    } else throw SpecError("placement: expected fixed or random, got '" + mode + "'");
    return;
  }
  if (!is_numeric_path(path)) throw SpecError(key + ": unknown setting");
  detail::TierPath tp;
  const bool boolean = key == "oma_mode" || (detail::match_tier_path(path, tp) && tp.field == "noma");
  apply_numeric(s, path, boolean ? (detail::parse_bool(key, text) ? 1.0 : 0.0) : detail::parse_number(key, text));
}

/// Applies settings in order, except that tier_count goes first so later tier paths see the final tier list.
inline void apply_settings(Scene& s, const std::vector<Setting>& settings) {
  for (const auto& [k, v] : settings)
    if (k == "tier_count") apply_setting(s, k, v);
  for (const auto& [k, v] : settings)
    if (k != "tier_count") apply_setting(s, k, v);
}

/// Grid text: a list of numbers, or linspace(a, b, n), or logspace(a, b, n) with exponents of 10.
inline std::vector<double> parse_grid(std::string_view text) {
  const auto t = detail::trim(text);
  static const std::regex re(R"((linspace|logspace)\s*\(([^,]+),([^,]+),([^,\)]+)\))");
  std::smatch m;
  if (std::regex_match(t, m, re)) {
    const double a = detail::parse_number("grid", m[2].str());
    const double b = detail::parse_number("grid", m[3].str());
    const auto n = detail::parse_count("grid", detail::parse_number("grid", m[4].str()));
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = n == 1 ? a : (i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
      out.push_back(m[1] == "logspace" ? std::pow(10.0, x) : x);
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& item : detail::split_list(t)) out.push_back(detail::parse_number("grid", item));
  return out;
}

// --- files ------------------------------------------------------------------

/// One [section] of an INI-style file, keys in file order.
struct Section {
  std::string name;
  std::vector<Setting> entries;
};

/// INI text: [section] headers, key = value lines, full-line comments starting with ; or #.
/// Empty sections are kept (an empty [scenario.NAME] means the base scene).
inline std::vector<Section> read_sections(std::istream& in) {
  std::vector<Section> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto t = detail::trim(line);
    const std::string where = "config line " + std::to_string(n) + ": ";
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw SpecError(where + "unterminated section header");
      auto name = detail::trim(std::string_view(t).substr(1, t.size() - 2));
      if (name.empty()) throw SpecError(where + "empty section name");
      for (const auto& sec : out)
        if (sec.name == name) throw SpecError(where + "duplicate section [" + name + "]");
      out.push_back({std::move(name), {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw SpecError(where + "expected key = value");
    auto key = detail::trim(std::string_view(t).substr(0, eq));
    auto value = detail::trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw SpecError(where + "missing key");
    if (out.empty()) throw SpecError(where + "key '" + key + "' outside any section");
    for (const auto& [k, v] : out.back().entries)
      if (k == key) throw SpecError(where + "duplicate key '" + key + "'");
    out.back().entries.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline std::vector<Section> read_sections_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open " + path);
  return read_sections(f);
}

/// Placement keys of a [placement] section, rewritten as setting paths.
inline std::vector<Setting> placement_settings(const Section& sec) {
  std::vector<Setting> out;
  for (const auto& [k, v] : sec.entries) {
    if (k == "mode") out.emplace_back("placement", v);
    else if (k == "radius") out.emplace_back("first_user_radius", v);
    else throw SpecError("[placement]: unknown key '" + k + "'");
  }
  // A radius implies fixed placement; an explicit random mode must win regardless of key order.
  std::stable_partition(out.begin(), out.end(), [](const Setting& s) { return s.first != "placement"; });
  return out;
}

/// Builds a scene from the [network] and [placement] sections on top of the default three-tier network.
inline Scene scene_from_sections(const std::vector<Section>& sections) {
  Scene s{table1_config(3), FixedPlacement{}};
  for (const auto& sec : sections) {
    if (sec.name == "network") apply_settings(s, sec.entries);
  }
  for (const auto& sec : sections) {
    if (sec.name == "placement") apply_settings(s, placement_settings(sec));
  }
  return s;
}

inline Scene load_scene(std::istream& in) { return scene_from_sections(read_sections(in)); }

inline Scene load_scene_file(const std::string& path) { return scene_from_sections(read_sections_file(path)); }

}  // namespace snhet::experiments
