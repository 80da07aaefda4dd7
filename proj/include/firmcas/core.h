#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace firmcas {

/// Higher-order personal value type of an employee.
enum class ValueType : std::uint8_t {
  Conservative,
  OpenToChange,
  SelfEnhancing,
  SelfTranscendent,
};

inline constexpr std::size_t kValueTypeCount = 4;
inline constexpr std::array<ValueType, kValueTypeCount> kValueTypes = {
    ValueType::Conservative, ValueType::OpenToChange, ValueType::SelfEnhancing,
    ValueType::SelfTranscendent};

constexpr std::size_t index_of(ValueType v) { return static_cast<std::size_t>(v); }

/// Short label used in exports: "C", "O", "SE", "ST".
std::string_view short_name(ValueType v);
std::optional<ValueType> parse_value_type(std::string_view s);

/// Marker for an absent observation in flat numeric records.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double x) { return std::isnan(x); }

/// Daily working time split. Individual time is the residual of the budget.
struct TimeAllocation {
  double shirk = 0.0;
  double coop = 0.0;
  double individual = 0.0;

  double total() const { return shirk + coop + individual; }
  bool operator==(const TimeAllocation&) const = default;
};

struct Employee {
  std::size_t id = 0;
  ValueType vtype = ValueType::Conservative;
  TimeAllocation alloc;
  double shirk_norm = 0.0;
  double coop_norm = 0.0;
  double satisfaction = 0.5;
  double base_satisfaction = 0.5;
  int catch_count = 0;
  // Steps at which written warnings were issued, strictly increasing.
  std::vector<int> written_warnings;
  double beta = 1.0;
  int interaction_cap = 0;
  double delta = 1.0;
};

/// Management instruments: monitoring share, PFP intensity and PFP type.
struct Strategy {
  double sigma = 0.5;
  double mu = 0.0;
  double lambda = 1.0;

  bool operator==(const Strategy&) const = default;
};

struct ManagementState {
  Strategy strategy;
  double s_max = 0.8;
  // One slot per day starting at day 0; nullopt when nobody was observed.
  std::vector<std::optional<double>> obs_shirk_history;
  std::vector<std::optional<double>> obs_coop_history;
  std::vector<double> output_history;
};

enum class TimeInitMethod : std::uint8_t { Randomly, Equally, Kappa, KappaNoShirk };
enum class NormLag : std::uint8_t { Current, Previous };
enum class ObsMeanDivisor : std::uint8_t { Observed, Workforce };

std::string_view to_string(TimeInitMethod m);
std::optional<TimeInitMethod> parse_time_init_method(std::string_view s);
std::string_view to_string(NormLag lag);
std::optional<NormLag> parse_norm_lag(std::string_view s);
std::string_view to_string(ObsMeanDivisor d);
std::optional<ObsMeanDivisor> parse_obs_mean_divisor(std::string_view s);

/// All exogenous parameters of one simulated firm. Defaults describe the
/// neutral, non-adaptive Base scenario.
struct SimConfig {
  std::string scenario = "Base";
  int n = 100;
  std::array<double, kValueTypeCount> type_dist = {0.25, 0.25, 0.25, 0.25};
  double kappa = 0.5;
  double wage_hourly = 1.0;
  double h = 0.1;
  double tau = 8.0;
  double s_eff = 0.5;
  double eta = 0.05;
  int suf = 30;
  double sui = 1.0 / 20.0;
  // Strategy window length; defaults to suf when unset.
  std::optional<int> lookback_x;
  int steps = 3650;
  int replicates = 100;
  std::uint64_t master_seed = 42;
  Strategy init_strategy;
  TimeInitMethod time_init_method = TimeInitMethod::Randomly;
  double cap_lo = 0.0;
  double cap_hi = 7.14;
  bool endogenous_management = false;
  NormLag norm_behavior_lag = NormLag::Current;
  bool rho_mu_scaling = true;
  ObsMeanDivisor obs_mean_divisor = ObsMeanDivisor::Observed;
  bool record_agents = false;

  int lookback() const { return lookback_x.value_or(suf); }
  double base_wage_daily() const { return wage_hourly * tau; }
  double initial_s_max() const { return tau / 10.0; }
};

/// Thrown for parameter combinations a computation cannot honour.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every invariant violation of `cfg`, one message each. Empty means valid.
std::vector<std::string> validate_config(const SimConfig& cfg);

}  // namespace firmcas
