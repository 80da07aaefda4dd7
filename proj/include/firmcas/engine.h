#pragma once

#include <span>
#include <vector>

#include "firmcas/core.h"
#include "firmcas/network.h"
#include "firmcas/record.h"
#include "firmcas/rng.h"

namespace firmcas {

/// One firm evolving day by day. Construction hires the workforce and takes
/// the day-zero snapshot; each `step()` runs one working day:
///
///   1. satisfaction recovers toward its base level
///   2. interaction caps are drawn and time is allocated
///   3. interactions happen and edge weights are updated
///   4. descriptive norms are updated from today's partners
///   5. the management monitors, warns, and adapts its shirking norm
///   6. output, bonuses, rewards and profitability are computed
///   7. on update days the strategy is revised from the previous x days and
///      base satisfaction is reset
///   8. the day's observables are recorded
///
/// All randomness comes from the single stream passed at construction, so a
/// seed fully determines the trajectory.
class Simulation {
 public:
  Simulation(SimConfig cfg, Rng rng);

  const DayRecord& step();

  int day() const { return t_; }
  const SimConfig& config() const { return cfg_; }
  std::span<const Employee> employees() const { return employees_; }
  const EdgeMatrix& edges() const { return edges_; }
  const ManagementState& management() const { return mgmt_; }
  const InteractionLog& last_interactions() const { return log_; }
  const std::vector<DayRecord>& records() const { return records_; }
  int strategy_updates() const { return strategy_updates_; }
  std::vector<DayRecord> take_records() { return std::move(records_); }

 private:
  void hire();
  void compute_economy();
  double mean_output() const;
  void record_day(int verbal, int written);

  SimConfig cfg_;
  Rng rng_;
  int t_ = 0;
  int strategy_updates_ = 0;
  std::vector<Employee> employees_;
  std::vector<ValueType> types_;
  EdgeMatrix edges_;
  InteractionLog log_;
  ManagementState mgmt_;
  std::vector<TimeAllocation> allocs_;
  std::vector<TimeAllocation> prev_allocs_;
  std::vector<double> outputs_;
  std::vector<double> rewards_;
  std::vector<DayRecord> records_;
};

struct RunResult {
  std::vector<DayRecord> records;  // day 0 .. steps
  std::vector<Employee> final_employees;
  ManagementState final_management;
  int strategy_updates = 0;
};

/// Runs a whole scenario. Throws ConfigError listing every violation when the
/// configuration is invalid.
RunResult run_scenario(const SimConfig& cfg, Rng rng);

struct AggregateResult {
  std::vector<RunResult> runs;  // indexed by replicate
  std::vector<DayRecord> mean;
};

/// Runs `cfg.replicates` seeded replicates on up to `threads` worker threads.
/// Results do not depend on the thread count.
AggregateResult run_replicates(const SimConfig& cfg, unsigned threads = 1);

/// Exact proportional split of n agents over the type distribution (largest
/// remainder), before shuffling.
std::vector<ValueType> assign_types(int n, const std::array<double, kValueTypeCount>& dist);

}  // namespace firmcas
