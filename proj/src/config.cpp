#include "sr1r/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sr1r {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ParsedConfig ParsedConfig::parse(std::istream& in) {
  ParsedConfig cfg;
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

ParsedConfig ParsedConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

bool ParsedConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ParsedConfig::get(const std::string& section, const std::string& key) const {
  if (!has(section, key))
    throw ConfigError("config is missing required key [" + section + "] " + key);
  return sections_.at(section).at(key);
}

std::string ParsedConfig::get_or(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
  return has(section, key) ? sections_.at(section).at(key) : fallback;
}

double ParsedConfig::get_double(const std::string& section, const std::string& key,
                                double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = get(section, key);
  if (raw == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key + ": '" + raw + "' is not a number");
  }
}

std::size_t ParsedConfig::get_size(const std::string& section, const std::string& key,
                                   std::size_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = get(section, key);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (used != raw.size() || v < 0) throw std::invalid_argument(raw);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key + ": '" + raw +
                      "' is not a nonnegative integer");
  }
}

bool ParsedConfig::get_bool(const std::string& section, const std::string& key,
                            bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = get(section, key);
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError("config key [" + section + "] " + key + ": '" + raw + "' is not a boolean");
}

std::vector<std::string> ParsedConfig::get_list(const std::string& section,
                                                const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(get(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty())
    throw ConfigError("config key [" + section + "] " + key + ": empty list");
  return out;
}

void ParsedConfig::restrict_keys(const std::string& section,
                                 const std::vector<std::string>& allowed) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return;
  for (const auto& [key, value] : s->second) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("config key [" + section + "] " + key + " is not recognized");
  }
}

ChannelConfig channel_from_config(const ParsedConfig& cfg) {
  cfg.restrict_keys("channel", {"model", "m", "n", "rician_k", "users", "antennas_per_user",
                                "los_scale", "link_distance_m", "user_spread_m", "carrier_ghz",
                                "user_height_m", "bs_height_m"});
  ChannelConfig ch;
  ch.model = channel_model_from_name(cfg.get("channel", "model"));
  ch.m = cfg.get_size("channel", "m", 64);
  ch.n = cfg.get_size("channel", "n", 64);
  ch.rician_k_factor = cfg.get_double("channel", "rician_k", 10.0);
  ch.users = cfg.get_size("channel", "users", 1);
  ch.antennas_per_user = cfg.get_size("channel", "antennas_per_user", 0);
  ch.los_probability_scale = cfg.get_double("channel", "los_scale", 18.0);
  ch.geometry.link_distance_m = cfg.get_double("channel", "link_distance_m", 40.0);
  ch.geometry.max_user_spread_m = cfg.get_double("channel", "user_spread_m", 10.0);
  ch.geometry.carrier_hz = cfg.get_double("channel", "carrier_ghz", 3.5) * 1e9;
  ch.geometry.user_height_m = cfg.get_double("channel", "user_height_m", 1.5);
  ch.geometry.bs_height_m = cfg.get_double("channel", "bs_height_m", 10.0);
  ch.validate();
  return ch;
}

namespace {

SchulzOptions schulz_from_config(const ParsedConfig& cfg) {
  cfg.restrict_keys("schulz", {"max_iterations", "tolerance", "fixed_iterations"});
  SchulzOptions opts;
  opts.max_iterations = cfg.get_size("schulz", "max_iterations", 200);
  opts.residual_tolerance = cfg.get_double("schulz", "tolerance", 1e-9);
  const std::size_t fixed = cfg.get_size("schulz", "fixed_iterations", 0);
  if (fixed > 0) opts.fixed_iterations = fixed;
  return opts;
}

}  // namespace

CondCdfConfig cond_cdf_from_config(const ParsedConfig& cfg) {
  cfg.restrict_keys("experiment", {"type", "seed", "trials", "rzf_snr_db", "tau",
                                   "epia_candidates", "selection_iterations"});
  CondCdfConfig c;
  c.channel = channel_from_config(cfg);
  c.trials = cfg.get_size("experiment", "trials", 1000);
  c.rzf_snr_db = cfg.get_double("experiment", "rzf_snr_db", 20.0);
  c.tau = cfg.get_size("experiment", "tau", 1);
  c.epia_candidates = cfg.get_size("experiment", "epia_candidates", 4);
  c.selection_iterations = cfg.get_size("experiment", "selection_iterations", 12);
  if (c.tau < 1) throw ConfigError("tau must be at least 1");
  if (c.epia_candidates < 1) throw ConfigError("epia_candidates must be at least 1");
  return c;
}

SerSweepConfig ser_sweep_from_config(const ParsedConfig& cfg) {
  cfg.restrict_keys("experiment", {"type", "seed", "tau", "epia_candidates"});
  cfg.restrict_keys("ser", {"precoders", "methods", "budgets", "snr_db", "symbols_per_point",
                            "realizations", "qam", "normalize_precoder", "noise_free"});
  SerSweepConfig c;
  c.channel = channel_from_config(cfg);
  c.tau = cfg.get_size("experiment", "tau", 1);
  c.epia_candidates = cfg.get_size("experiment", "epia_candidates", 4);
  c.schulz = schulz_from_config(cfg);

  c.precoders.clear();
  for (const std::string& p : cfg.get_list("ser", "precoders"))
    c.precoders.push_back(precoder_from_name(p));
  c.methods.clear();
  for (const std::string& m : cfg.get_list("ser", "methods"))
    c.methods.push_back(inversion_method_from_name(m));
  c.budgets.clear();
  for (const std::string& b : cfg.get_list("ser", "budgets")) {
    try {
      c.budgets.push_back(static_cast<std::size_t>(std::stoull(b)));
    } catch (const std::exception&) {
      throw ConfigError("budget '" + b + "' is not a nonnegative integer");
    }
  }
  c.snr_db.clear();
  for (const std::string& s : cfg.get_list("ser", "snr_db")) {
    try {
      c.snr_db.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw ConfigError("snr value '" + s + "' is not a number");
    }
  }
  c.symbols_per_point = cfg.get_size("ser", "symbols_per_point", 200000);
  c.realizations = cfg.get_size("ser", "realizations", 200);
  c.qam_order = cfg.get_size("ser", "qam", 16);
  c.normalize_precoder = cfg.get_bool("ser", "normalize_precoder", true);
  c.noise_free = cfg.get_bool("ser", "noise_free", false);
  if (c.realizations < 1 || c.symbols_per_point < 1)
    throw ConfigError("ser sweep needs positive realizations and symbols_per_point");
  return c;
}

std::uint64_t master_seed(const ParsedConfig& cfg, const std::string& cli_seed) {
  std::string raw = cli_seed;
  if (raw.empty()) raw = cfg.get_or("experiment", "seed", "");
  if (raw.empty())
    throw ConfigError("a master seed is required (--seed or [experiment] seed); "
                      "wall-clock seeding is not supported");
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("seed '" + raw + "' is not a nonnegative integer");
  }
}

}  // namespace sr1r
