#include "firmcas/engine.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "firmcas/behavior.h"
#include "firmcas/economy.h"
#include "firmcas/management.h"
#include "firmcas/metrics.h"
#include "firmcas/wellbeing.h"

namespace firmcas {

std::vector<ValueType> assign_types(int n, const std::array<double, kValueTypeCount>& dist) {
  std::array<int, kValueTypeCount> counts{};
  std::array<double, kValueTypeCount> remainders{};
  int assigned = 0;
  for (std::size_t g = 0; g < kValueTypeCount; ++g) {
    const double exact = dist[g] * n;
    counts[g] = static_cast<int>(std::floor(exact));
    remainders[g] = exact - counts[g];
    assigned += counts[g];
  }
  std::array<std::size_t, kValueTypeCount> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % kValueTypeCount, ++assigned) {
    ++counts[order[k]];
  }

  std::vector<ValueType> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < kValueTypeCount; ++g) {
    out.insert(out.end(), static_cast<std::size_t>(counts[g]), kValueTypes[g]);
  }
  return out;
}

Simulation::Simulation(SimConfig cfg, Rng rng) : cfg_(std::move(cfg)), rng_(rng) { hire(); }

void Simulation::hire() {
  const auto n = static_cast<std::size_t>(cfg_.n);
  types_ = assign_types(cfg_.n, cfg_.type_dist);
  rng_.shuffle(types_.begin(), types_.end());

  mgmt_ = ManagementState{};
  mgmt_.strategy = cfg_.init_strategy;
  mgmt_.s_max = cfg_.initial_s_max();

  employees_.resize(n);
  allocs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Employee& e = employees_[i];
    e.id = i;
    e.vtype = types_[i];
    e.delta = deviation_delta(e.vtype);
    e.alloc = initial_allocation(cfg_.time_init_method, cfg_.kappa, cfg_.tau, mgmt_.s_max, rng_);
    e.shirk_norm = e.alloc.shirk;
    e.coop_norm = e.alloc.coop;
    e.base_satisfaction = base_satisfaction(e.vtype, mgmt_.strategy);
    e.satisfaction = e.base_satisfaction;
    allocs_[i] = e.alloc;
  }
  prev_allocs_ = allocs_;
  edges_ = EdgeMatrix(n);
  log_ = InteractionLog(n);
  compute_economy();
  // Day zero has no observations but does have an output level, so a window
  // reaching back to it still sees the initial output.
  mgmt_.obs_shirk_history.push_back(std::nullopt);
  mgmt_.obs_coop_history.push_back(std::nullopt);
  mgmt_.output_history.push_back(mean_output());
  record_day(0, 0);
}

double Simulation::mean_output() const {
  return std::accumulate(outputs_.begin(), outputs_.end(), 0.0) /
         static_cast<double>(outputs_.size());
}

void Simulation::compute_economy() {
  const std::size_t n = employees_.size();
  outputs_.assign(n, 0.0);
  rewards_.assign(n, 0.0);
  double coop_total = 0.0;
  for (const auto& e : employees_) coop_total += e.alloc.coop;
  for (std::size_t i = 0; i < n; ++i) {
    const Employee& e = employees_[i];
    const double mean_coop_others = (coop_total - e.alloc.coop) / static_cast<double>(n - 1);
    outputs_[i] = individual_output(e.alloc.individual, std::max(0.0, mean_coop_others),
                                    cfg_.kappa, productivity(e.satisfaction, cfg_.s_eff),
                                    cfg_.wage_hourly);
  }
  const auto b = bonuses(outputs_, mgmt_.strategy.lambda);
  for (std::size_t i = 0; i < n; ++i) {
    rewards_[i] = reward(cfg_.base_wage_daily(), mgmt_.strategy.mu, b[i]);
  }
}

const DayRecord& Simulation::step() {
  ++t_;
  const int t = t_;
  const std::size_t n = employees_.size();

  for (auto& e : employees_) {
    e.satisfaction = recover_satisfaction(e.satisfaction, e.base_satisfaction);
  }

  prev_allocs_ = allocs_;
  std::vector<int> caps(n);
  const BehaviorParams behavior{cfg_.tau, cfg_.rho_mu_scaling};
  for (std::size_t i = 0; i < n; ++i) {
    Employee& e = employees_[i];
    e.interaction_cap = draw_interaction_cap(cfg_.cap_lo, cfg_.cap_hi, rng_);
    caps[i] = e.interaction_cap;
    e.beta = warning_scaling(e.written_warnings, t);
    e.alloc = allocate_time(e, mgmt_.strategy, t, behavior, rng_);
    allocs_[i] = e.alloc;
  }

  log_ = run_interaction_phase(allocs_, cfg_.tau, edges_, std::move(caps), rng_);
  update_edges(edges_, log_, t);

  const auto& partner_behaviour =
      cfg_.norm_behavior_lag == NormLag::Current ? allocs_ : prev_allocs_;
  std::vector<std::pair<double, double>> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = update_norms(employees_[i], log_, partner_behaviour, cfg_.h);
  }
  for (std::size_t i = 0; i < n; ++i) {
    employees_[i].shirk_norm = norms[i].first;
    employees_[i].coop_norm = norms[i].second;
  }

  const auto monitored = draw_monitoring_set(mgmt_.strategy.sigma, n, rng_);
  const auto seen = process_monitoring(monitored, employees_, mgmt_.s_max, t, cfg_.eta,
                                       cfg_.obs_mean_divisor);
  if (cfg_.endogenous_management) {
    mgmt_.s_max = update_max_shirking(mgmt_.s_max, mgmt_.obs_shirk_history.back(), cfg_.h);
  }

  compute_economy();

  // The strategy window covers days t-x .. t-1, so today's observations are
  // appended only after the revision.
  if (cfg_.endogenous_management && t % cfg_.suf == 0) {
    const auto window = make_window(mgmt_, cfg_.lookback());
    const StrategyInputs inputs{cfg_.sui, expected_group_output(mgmt_.s_max, cfg_.kappa, cfg_.tau),
                                cfg_.kappa, cfg_.tau};
    const Strategy next = update_strategy(mgmt_, window, inputs);
    ++strategy_updates_;
    if (next != mgmt_.strategy) {
      mgmt_.strategy = next;
      for (auto& e : employees_) e.base_satisfaction = base_satisfaction(e.vtype, next);
    }
  }
  mgmt_.obs_shirk_history.push_back(seen.mean_obs_shirk);
  mgmt_.obs_coop_history.push_back(seen.mean_obs_coop);
  mgmt_.output_history.push_back(mean_output());

  record_day(seen.verbal, seen.written);
  return records_.back();
}

void Simulation::record_day(int verbal, int written) {
  const std::size_t n = employees_.size();
  DayRecord r;
  r.t = t_;
  r.strategy = mgmt_.strategy;
  r.s_max = mgmt_.s_max;
  r.ego = expected_group_output(mgmt_.s_max, cfg_.kappa, cfg_.tau);
  if (t_ > 0) {
    r.mean_obs_shirk = mgmt_.obs_shirk_history.back().value_or(kMissing);
    r.mean_obs_coop = mgmt_.obs_coop_history.back().value_or(kMissing);
  }

  GroupValues group_sat{};
  std::array<int, kValueTypeCount> group_n{};
  double sat_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Employee& e = employees_[i];
    const std::size_t g = index_of(e.vtype);
    r.mean_shirk += e.alloc.shirk;
    r.mean_coop += e.alloc.coop;
    r.total_output += outputs_[i];
    r.total_reward += rewards_[i];
    r.group_output[g] += outputs_[i];
    r.group_reward[g] += rewards_[i];
    sat_total += e.satisfaction;
    group_sat[g] += e.satisfaction;
    ++group_n[g];
  }
  const auto dn = static_cast<double>(n);
  r.mean_shirk /= dn;
  r.mean_coop /= dn;
  r.mean_output = r.total_output / dn;
  r.profitability = profitability(outputs_, rewards_);
  r.satisfaction_mean = sat_total / dn;
  for (std::size_t g = 0; g < kValueTypeCount; ++g) {
    r.group_profitability[g] =
        group_n[g] > 0 ? r.group_output[g] / r.group_reward[g] : kMissing;
    r.group_satisfaction[g] = group_n[g] > 0 ? group_sat[g] / group_n[g] : kMissing;
  }

  const auto homophily = summarize_homophily(edges_, types_);
  r.homophily_mean = homophily.firm;
  r.group_homophily = homophily.groups;
  r.verbal_warnings = verbal;
  r.written_warnings = written;
  r.interactions_per_agent = 2.0 * static_cast<double>(log_.total_pairs()) / dn;

  if (cfg_.record_agents) {
    r.agents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      r.agents.push_back({employees_[i].alloc, employees_[i].satisfaction, outputs_[i], rewards_[i]});
    }
  }
  records_.push_back(std::move(r));
}

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "invalid configuration:";
  for (const auto& m : v) out += "\n  - " + m;
  return out;
}

}  // namespace

RunResult run_scenario(const SimConfig& cfg, Rng rng) {
  if (const auto violations = validate_config(cfg); !violations.empty()) {
    throw ConfigError(join_violations(violations));
  }
  Simulation sim(cfg, rng);
  for (int k = 0; k < cfg.steps; ++k) sim.step();
  RunResult out;
  out.final_employees.assign(sim.employees().begin(), sim.employees().end());
  out.final_management = sim.management();
  out.strategy_updates = sim.strategy_updates();
  out.records = sim.take_records();
  return out;
}

AggregateResult run_replicates(const SimConfig& cfg, unsigned threads) {
  if (const auto violations = validate_config(cfg); !violations.empty()) {
    throw ConfigError(join_violations(violations));
  }
  const auto count = static_cast<std::size_t>(cfg.replicates);
  AggregateResult out;
  out.runs.resize(count);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      out.runs[k] = run_scenario(cfg, replicate_rng(cfg.master_seed, k));
    }
  };
  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<const std::vector<DayRecord>*> series;
  series.reserve(count);
  for (const auto& r : out.runs) series.push_back(&r.records);
  out.mean = aggregate_replicates(std::span<const std::vector<DayRecord>* const>(series));
  return out;
}

}  // namespace firmcas
