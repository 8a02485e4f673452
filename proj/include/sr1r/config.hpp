#pragma once

#include <map>
#include <string>
#include <vector>

#include "sr1r/experiments.hpp"

namespace sr1r {

/// Flat sectioned key-value text: "[section]" headers, "key = value"
/// lines, '#' comments. Unknown keys are rejected by the typed loaders so
/// a typo cannot silently fall back to a default.
class ParsedConfig {
 public:
  static ParsedConfig parse(std::istream& in);
  static ParsedConfig parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  double get_double(const std::string& section, const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& section, const std::string& key,
                       std::size_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

  /// Every key actually present must be in the allowed set.
  void restrict_keys(const std::string& section, const std::vector<std::string>& allowed) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

ChannelConfig channel_from_config(const ParsedConfig& cfg);
CondCdfConfig cond_cdf_from_config(const ParsedConfig& cfg);
SerSweepConfig ser_sweep_from_config(const ParsedConfig& cfg);

/// The master seed is mandatory: either the CLI override or the
/// [experiment] seed key. Wall-clock seeding is deliberately unsupported.
std::uint64_t master_seed(const ParsedConfig& cfg, const std::string& cli_seed);

}  // namespace sr1r
