#include "firmcas/management.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace firmcas {

std::vector<std::size_t> draw_monitoring_set(double sigma, std::size_t n, Rng& rng) {
  const auto size = static_cast<std::size_t>(std::nearbyint(sigma * static_cast<double>(n)));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  const std::size_t take = std::min(size, n);
  for (std::size_t k = 0; k < take; ++k) {
    const std::size_t pick = k + rng.below(n - k);
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(take);
  return pool;
}

MonitoringOutcome process_monitoring(std::span<const std::size_t> monitored,
                                     std::span<Employee> employees, double s_max, int t,
                                     double eta, ObsMeanDivisor divisor) {
  MonitoringOutcome out;
  if (monitored.empty()) return out;

  double shirk_sum = 0.0;
  double coop_sum = 0.0;
  for (std::size_t i : monitored) {
    Employee& emp = employees[i];
    shirk_sum += emp.alloc.shirk;
    coop_sum += emp.alloc.coop;
    if (emp.alloc.shirk <= s_max) continue;

    ++emp.catch_count;
    emp.satisfaction = apply_warning_shock(emp.satisfaction, WarningKind::Verbal, eta);
    out.warnings.push_back({i, WarningKind::Verbal});
    ++out.verbal;
    if (emp.catch_count >= 3) {
      emp.catch_count = 0;
      emp.written_warnings.push_back(t);
      emp.satisfaction = apply_warning_shock(emp.satisfaction, WarningKind::Written, eta);
      out.warnings.push_back({i, WarningKind::Written});
      ++out.written;
    }
  }
  const double denom = divisor == ObsMeanDivisor::Observed
                           ? static_cast<double>(monitored.size())
                           : static_cast<double>(employees.size());
  out.mean_obs_shirk = shirk_sum / denom;
  out.mean_obs_coop = coop_sum / denom;
  return out;
}

double update_max_shirking(double s_max, std::optional<double> prev_mean_obs_shirk, double h) {
  if (!prev_mean_obs_shirk) return s_max;
  return (1.0 - h) * s_max + h * *prev_mean_obs_shirk;
}

double expected_group_output(double s_max, double kappa, double tau) {
  const double alpha = tau - s_max;
  if (alpha <= 0.0) return 0.0;
  const double x = alpha * (1.0 - kappa);
  const double y = alpha * kappa;
  // x^(1-k) y^k written as x (y/x)^k: exact when both factors coincide and
  // free of the 0^0 corner cases at k = 0 and k = 1.
  if (x == 0.0) return y;
  if (y == 0.0) return x;
  return x * std::pow(y / x, kappa);
}

namespace {

std::optional<double> tail_mean(const std::vector<std::optional<double>>& xs, int len) {
  const std::size_t count = std::min<std::size_t>(xs.size(), static_cast<std::size_t>(len));
  double sum = 0.0;
  int seen = 0;
  for (std::size_t k = xs.size() - count; k < xs.size(); ++k) {
    if (xs[k]) {
      sum += *xs[k];
      ++seen;
    }
  }
  if (seen == 0) return std::nullopt;
  return sum / seen;
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kStrategyTolerance * std::max(std::abs(a), std::abs(b));
}

// -1: below target, +1: above target, 0: met within tolerance.
int compare_to_target(double value, double target) {
  if (nearly_equal(value, target)) return 0;
  return value < target ? -1 : 1;
}

double grow(double x, double sui) { return x == 0.0 ? sui : x * (1.0 + sui); }

}  // namespace

StrategyWindow make_window(const ManagementState& mgmt, int window_len) {
  StrategyWindow w;
  w.window_len = window_len;
  w.mean_obs_shirk = tail_mean(mgmt.obs_shirk_history, window_len);
  w.mean_obs_coop = tail_mean(mgmt.obs_coop_history, window_len);
  const auto& out = mgmt.output_history;
  const std::size_t count = std::min<std::size_t>(out.size(), static_cast<std::size_t>(window_len));
  if (count > 0) {
    w.mean_output = std::accumulate(out.end() - static_cast<std::ptrdiff_t>(count), out.end(), 0.0) /
                    static_cast<double>(count);
  }
  return w;
}

Strategy update_strategy(const ManagementState& mgmt, const StrategyWindow& window,
                         const StrategyInputs& in) {
  const Strategy& prev = mgmt.strategy;
  Strategy next = prev;

  // Monitoring. A fully trusting management only reacts to an output gap.
  if (prev.sigma == 0.0 && window.mean_output < in.ego) {
    next.sigma = (1.0 - window.mean_output / in.ego) * in.sui;
  } else if (window.mean_obs_shirk) {
    next.sigma = *window.mean_obs_shirk > mgmt.s_max ? prev.sigma * (1.0 + in.sui)
                                                     : prev.sigma * (1.0 - in.sui);
  }

  // PFP intensity follows the output gap.
  switch (compare_to_target(window.mean_output, in.ego)) {
    case -1: next.mu = grow(prev.mu, in.sui); break;
    case 1: next.mu = prev.mu * (1.0 - in.sui); break;
    default: break;
  }

  // PFP type follows the cooperation gap.
  if (window.mean_obs_coop) {
    const double target = in.kappa * (in.tau - mgmt.s_max);
    switch (compare_to_target(*window.mean_obs_coop, target)) {
      case -1: next.lambda = grow(prev.lambda, in.sui); break;
      case 1: next.lambda = prev.lambda * (1.0 - in.sui); break;
      default: break;
    }
  }

  next.sigma = std::clamp(next.sigma, 0.0, 1.0);
  next.mu = std::clamp(next.mu, 0.0, 1.0);
  next.lambda = std::clamp(next.lambda, 0.0, 1.0);
  return next;
}

}  // namespace firmcas
