#include "firmcas/config_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace firmcas {

namespace {

struct Preset {
  const char* name;
  bool endogenous;
  int suf;
  double sui;
};

// (suf, sui) per scenario. Base keeps the management fixed.
constexpr Preset kPresets[] = {
    {"Base", false, 30, 1.0 / 20.0},
    {"Daily", true, 1, 1.0 / 600.0},
    {"Monthly", true, 30, 1.0 / 20.0},
    {"Biannually", true, 180, 3.0 / 10.0},
    {"Yearly", true, 365, 73.0 / 120.0},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view text, std::string_view whole) {
  text = trim(text);
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  }
  return x;
}

int parse_int(std::string_view text) {
  const double x = parse_number(text);
  if (x != static_cast<double>(static_cast<long long>(x))) {
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  }
  return static_cast<int>(x);
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("not a boolean: '" + std::string(text) + "'");
}

template <typename T>
T require(std::optional<T> v, std::string_view key, std::string_view text) {
  if (!v) throw ConfigError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
  return *v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.emplace_back(p.name);
    return out;
  }();
  return names;
}

std::optional<SimConfig> scenario_preset(std::string_view name, const SimConfig& base) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    SimConfig cfg = base;
    cfg.scenario = p.name;
    cfg.endogenous_management = p.endogenous;
    cfg.suf = p.suf;
    cfg.sui = p.sui;
    cfg.lookback_x.reset();
    return cfg;
  }
  return std::nullopt;
}

double parse_number(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text, text);
  const double num = parse_plain(text.substr(0, slash), text);
  const double den = parse_plain(text.substr(slash + 1), text);
  if (den == 0.0) throw ConfigError("division by zero in '" + std::string(text) + "'");
  return num / den;
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "scenario") {
    cfg = require(scenario_preset(value, cfg), key, value);
  } else if (key == "n") {
    cfg.n = parse_int(value);
  } else if (key == "type_dist") {
    const auto parts = split(value, ',');
    if (parts.size() != kValueTypeCount) {
      throw ConfigError("type_dist needs four comma-separated shares (C,O,SE,ST)");
    }
    for (std::size_t g = 0; g < kValueTypeCount; ++g) cfg.type_dist[g] = parse_number(parts[g]);
  } else if (key == "kappa") {
    cfg.kappa = parse_number(value);
  } else if (key == "wage_hourly") {
    cfg.wage_hourly = parse_number(value);
  } else if (key == "h") {
    cfg.h = parse_number(value);
  } else if (key == "tau") {
    cfg.tau = parse_number(value);
  } else if (key == "s_eff") {
    cfg.s_eff = parse_number(value);
  } else if (key == "eta") {
    cfg.eta = parse_number(value);
  } else if (key == "suf") {
    cfg.suf = parse_int(value);
  } else if (key == "sui") {
    cfg.sui = parse_number(value);
  } else if (key == "suf_sui") {
    const auto parts = split(value, ':');
    if (parts.size() != 2) throw ConfigError("suf_sui expects 'suf:sui', got '" + std::string(value) + "'");
    cfg.suf = parse_int(parts[0]);
    cfg.sui = parse_number(parts[1]);
  } else if (key == "lookback_x") {
    cfg.lookback_x = parse_int(value);
  } else if (key == "steps") {
    cfg.steps = parse_int(value);
  } else if (key == "replicates") {
    cfg.replicates = parse_int(value);
  } else if (key == "seed") {
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
      throw ConfigError("seed must be a non-negative integer: '" + std::string(value) + "'");
    }
    cfg.master_seed = seed;
  } else if (key == "sigma0") {
    cfg.init_strategy.sigma = parse_number(value);
  } else if (key == "mu0") {
    cfg.init_strategy.mu = parse_number(value);
  } else if (key == "lambda0") {
    cfg.init_strategy.lambda = parse_number(value);
  } else if (key == "time_init_method") {
    cfg.time_init_method = require(parse_time_init_method(value), key, value);
  } else if (key == "cap_lo") {
    cfg.cap_lo = parse_number(value);
  } else if (key == "cap_hi") {
    cfg.cap_hi = parse_number(value);
  } else if (key == "endogenous_management") {
    cfg.endogenous_management = parse_bool(value);
  } else if (key == "norm_behavior_lag") {
    cfg.norm_behavior_lag = require(parse_norm_lag(value), key, value);
  } else if (key == "rho_mu_scaling") {
    cfg.rho_mu_scaling = parse_bool(value);
  } else if (key == "obs_mean_divisor") {
    cfg.obs_mean_divisor = require(parse_obs_mean_divisor(value), key, value);
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

void apply_config_stream(SimConfig& cfg, std::istream& in, std::string_view source) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(source) + ":" + std::to_string(lineno) + ": expected key = value");
    }
    entries.emplace_back(std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))));
  }
  // The preset must not clobber explicit keys that follow it in the file.
  std::stable_partition(entries.begin(), entries.end(),
                        [](const auto& kv) { return kv.first == "scenario"; });
  for (const auto& [k, v] : entries) {
    try {
      apply_setting(cfg, k, v);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(source) + ": " + e.what());
    }
  }
}

void apply_config_file(SimConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  apply_config_stream(cfg, in, path.string());
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys{"sigma0", "mu0",   "lambda0", "time_init_method",
                                             "suf_sui", "h",     "kappa",   "eta",
                                             "s_eff"};
  return keys;
}

bool is_sweepable(std::string_view key) {
  const auto& keys = sweepable_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys{
      "scenario",   "n",       "type_dist",  "kappa",          "wage_hourly",
      "h",          "tau",     "s_eff",      "eta",            "suf",
      "sui",        "suf_sui", "lookback_x", "steps",          "replicates",
      "seed",       "sigma0",  "mu0",        "lambda0",        "time_init_method",
      "cap_lo",     "cap_hi",  "endogenous_management",        "norm_behavior_lag",
      "rho_mu_scaling",        "obs_mean_divisor"};
  return keys;
}

}  // namespace firmcas
