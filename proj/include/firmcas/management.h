#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "firmcas/core.h"
#include "firmcas/rng.h"
#include "firmcas/wellbeing.h"

namespace firmcas {

/// Monitored subset for today: round(sigma * n) agents drawn without
/// replacement (ties to even), returned in draw order.
std::vector<std::size_t> draw_monitoring_set(double sigma, std::size_t n, Rng& rng);

struct WarningEvent {
  std::size_t agent = 0;
  WarningKind kind = WarningKind::Verbal;
};

struct MonitoringOutcome {
  std::vector<WarningEvent> warnings;
  std::optional<double> mean_obs_shirk;
  std::optional<double> mean_obs_coop;
  int verbal = 0;
  int written = 0;
};

/// Observes the employees in `monitored`. Everyone shirking strictly more than
/// `s_max` gets a verbal warning; every third catch additionally yields a
/// written warning recorded at step `t`. Shocks are applied to satisfaction.
MonitoringOutcome process_monitoring(std::span<const std::size_t> monitored,
                                     std::span<Employee> employees, double s_max, int t,
                                     double eta, ObsMeanDivisor divisor);

/// Management's own shirking norm; unchanged when yesterday had no observation.
double update_max_shirking(double s_max, std::optional<double> prev_mean_obs_shirk, double h);

/// Cobb-Douglas optimum of output when shirking sits exactly at `s_max`.
double expected_group_output(double s_max, double kappa, double tau);

/// Window means over the last `window_len` recorded days. Days without an
/// observation are skipped; an all-missing series gives nullopt.
struct StrategyWindow {
  int window_len = 1;
  std::optional<double> mean_obs_shirk;
  std::optional<double> mean_obs_coop;
  double mean_output = 0.0;
};

StrategyWindow make_window(const ManagementState& mgmt, int window_len);

struct StrategyInputs {
  double sui = 0.05;
  double ego = 0.0;
  double kappa = 0.5;
  double tau = 8.0;
};

/// One revision of (sigma, mu, lambda), clamped into [0,1].
Strategy update_strategy(const ManagementState& mgmt, const StrategyWindow& window,
                         const StrategyInputs& in);

/// Relative tolerance for the "target met exactly" branches.
inline constexpr double kStrategyTolerance = 1e-9;

}  // namespace firmcas
