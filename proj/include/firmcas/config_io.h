#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "firmcas/core.h"

namespace firmcas {

/// Names of the five named scenarios in canonical order.
const std::vector<std::string>& scenario_names();

/// Configuration of a named scenario on top of `base` (seed, steps, n and
/// other exogenous settings are kept). nullopt for an unknown name.
std::optional<SimConfig> scenario_preset(std::string_view name, const SimConfig& base = {});

/// Parses "0.25", "1e-3" or a fraction "1/600". Throws ConfigError.
double parse_number(std::string_view text);

/// Sets one documented key. Throws ConfigError on an unknown key or a value
/// that does not parse. Recognised keys:
///   scenario n type_dist kappa wage_hourly h tau s_eff eta suf sui
///   lookback_x steps replicates seed sigma0 mu0 lambda0 time_init_method
///   cap_lo cap_hi endogenous_management norm_behavior_lag rho_mu_scaling
///   obs_mean_divisor suf_sui
/// `scenario` replaces the strategy-related settings with the named preset.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat `key = value` file (blank lines and `#` comments allowed).
/// A `scenario` line is applied before all other keys regardless of position.
void apply_config_stream(SimConfig& cfg, std::istream& in, std::string_view source = "<config>");
void apply_config_file(SimConfig& cfg, const std::filesystem::path& path);

/// Keys accepted by sweeps.
const std::vector<std::string>& sweepable_keys();
bool is_sweepable(std::string_view key);

/// Every documented key, for help text.
const std::vector<std::string>& setting_keys();

}  // namespace firmcas
