#pragma once

#include <array>
#include <vector>

#include "firmcas/core.h"

namespace firmcas {

struct AgentDay {
  TimeAllocation alloc;
  double satisfaction = 0.0;
  double output = 0.0;
  double reward = 0.0;
};

using GroupValues = std::array<double, kValueTypeCount>;

/// Observables of one simulated day. Missing values are kMissing (NaN): the
/// observed means on days without monitoring, and homophily where no agent
/// has peers yet.
struct DayRecord {
  int t = 0;
  Strategy strategy;
  double s_max = 0.0;
  double ego = 0.0;
  double mean_obs_shirk = kMissing;
  double mean_obs_coop = kMissing;
  double mean_shirk = 0.0;
  double mean_coop = 0.0;
  double mean_output = 0.0;
  double total_output = 0.0;
  double total_reward = 0.0;
  double profitability = 0.0;
  GroupValues group_output{};
  GroupValues group_reward{};
  GroupValues group_profitability{};
  double satisfaction_mean = 0.0;
  GroupValues group_satisfaction{};
  double homophily_mean = kMissing;
  GroupValues group_homophily{kMissing, kMissing, kMissing, kMissing};
  double verbal_warnings = 0.0;
  double written_warnings = 0.0;
  double interactions_per_agent = 0.0;
  // Filled only when per-agent recording is switched on.
  std::vector<AgentDay> agents;
};

/// Calls `f(double&)` on every scalar numeric field except `t`, in a fixed
/// order. Per-agent traces are not visited.
template <class Record, class F>
void visit_numeric_fields(Record& r, F&& f) {
  f(r.strategy.sigma);
  f(r.strategy.mu);
  f(r.strategy.lambda);
  f(r.s_max);
  f(r.ego);
  f(r.mean_obs_shirk);
  f(r.mean_obs_coop);
  f(r.mean_shirk);
  f(r.mean_coop);
  f(r.mean_output);
  f(r.total_output);
  f(r.total_reward);
  f(r.profitability);
  for (auto& x : r.group_output) f(x);
  for (auto& x : r.group_reward) f(x);
  for (auto& x : r.group_profitability) f(x);
  f(r.satisfaction_mean);
  for (auto& x : r.group_satisfaction) f(x);
  f(r.homophily_mean);
  for (auto& x : r.group_homophily) f(x);
  f(r.verbal_warnings);
  f(r.written_warnings);
  f(r.interactions_per_agent);
}

}  // namespace firmcas
