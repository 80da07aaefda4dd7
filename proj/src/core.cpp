#include "firmcas/core.h"

#include <numeric>

namespace firmcas {

std::string_view short_name(ValueType v) {
  switch (v) {
    case ValueType::Conservative: return "C";
    case ValueType::OpenToChange: return "O";
    case ValueType::SelfEnhancing: return "SE";
    case ValueType::SelfTranscendent: return "ST";
  }
  return "?";
}

std::optional<ValueType> parse_value_type(std::string_view s) {
  for (ValueType v : kValueTypes) {
    if (short_name(v) == s) return v;
  }
  return std::nullopt;
}

std::string_view to_string(TimeInitMethod m) {
  switch (m) {
    case TimeInitMethod::Randomly: return "Randomly";
    case TimeInitMethod::Equally: return "Equally";
    case TimeInitMethod::Kappa: return "Kappa";
    case TimeInitMethod::KappaNoShirk: return "KappaNoShirk";
  }
  return "?";
}

std::optional<TimeInitMethod> parse_time_init_method(std::string_view s) {
  for (auto m : {TimeInitMethod::Randomly, TimeInitMethod::Equally, TimeInitMethod::Kappa,
                 TimeInitMethod::KappaNoShirk}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(NormLag lag) {
  return lag == NormLag::Current ? "current" : "previous";
}

std::optional<NormLag> parse_norm_lag(std::string_view s) {
  if (s == "current") return NormLag::Current;
  if (s == "previous") return NormLag::Previous;
  return std::nullopt;
}

std::string_view to_string(ObsMeanDivisor d) {
  return d == ObsMeanDivisor::Observed ? "etc" : "n";
}

std::optional<ObsMeanDivisor> parse_obs_mean_divisor(std::string_view s) {
  if (s == "etc") return ObsMeanDivisor::Observed;
  if (s == "n") return ObsMeanDivisor::Workforce;
  return std::nullopt;
}

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

std::vector<std::string> validate_config(const SimConfig& cfg) {
  std::vector<std::string> out;
  auto check = [&out](bool ok, std::string msg) {
    if (!ok) out.push_back(std::move(msg));
  };

  check(cfg.n >= 2, "n must be at least 2");
  bool dist_ok = true;
  for (double f : cfg.type_dist) dist_ok = dist_ok && in_unit(f);
  check(dist_ok, "type distribution entries must lie in [0,1]");
  const double dist_sum = std::accumulate(cfg.type_dist.begin(), cfg.type_dist.end(), 0.0);
  check(std::abs(dist_sum - 1.0) <= 1e-9, "type distribution must sum to 1");
  check(in_unit(cfg.kappa), "kappa must lie in [0,1]");
  check(cfg.wage_hourly > 0.0, "hourly wage must be positive");
  check(cfg.h > 0.0 && cfg.h < 1.0, "h must lie in (0,1)");
  check(cfg.tau > 0.0, "tau must be positive");
  check(in_unit(cfg.s_eff), "s_eff must lie in [0,1]");
  check(cfg.eta >= 0.0 && cfg.eta <= 1.0 / 3.0, "eta must lie in [0,1/3]");
  check(cfg.suf >= 1, "suf must be a positive integer");
  check(cfg.sui > 0.0, "sui must be positive");
  check(cfg.lookback() >= 1, "lookback_x must be a positive integer");
  check(cfg.steps >= 0, "steps must be non-negative");
  check(cfg.replicates >= 1, "replicates must be at least 1");
  check(in_unit(cfg.init_strategy.sigma), "initial sigma must lie in [0,1]");
  check(in_unit(cfg.init_strategy.mu), "initial mu must lie in [0,1]");
  check(in_unit(cfg.init_strategy.lambda), "initial lambda must lie in [0,1]");
  check(cfg.cap_lo >= 0.0 && cfg.cap_lo <= cfg.cap_hi,
        "interaction cap range must satisfy 0 <= lo <= hi");
  check(!cfg.scenario.empty(), "scenario name must not be empty");
  return out;
}

}  // namespace firmcas
