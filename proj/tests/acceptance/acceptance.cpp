// Acceptance run: one PASS/FAIL line per criterion.
//
// Criteria 1-9 are exact property checks on small runs. Criteria 10-14 are
// qualitative reproduction targets evaluated on the full setup (n = 100,
// 3650 steps, 30 replicates per scenario by default).
//
// Exit status: non-zero when a property check fails. Reproduction targets are
// reported but only affect the exit status with --strict.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "firmcas/behavior.h"
#include "firmcas/config_io.h"
#include "firmcas/economy.h"
#include "firmcas/engine.h"
#include "firmcas/export.h"
#include "firmcas/management.h"
#include "firmcas/metrics.h"
#include "firmcas/network.h"
#include "support/oracles.h"

using namespace firmcas;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int g_property_failures = 0;
int g_reproduction_failures = 0;

void report(int id, const char* title, const Verdict& v) {
  std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) (id <= 9 ? g_property_failures : g_reproduction_failures)++;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

SimConfig property_config() {
  SimConfig cfg = *scenario_preset("Monthly");
  cfg.n = 100;
  cfg.steps = 500;
  return cfg;
}

// ---------------------------------------------------------------- 1 and 2

Verdict budget_and_bounds(bool bounds) {
  const SimConfig cfg = property_config();
  Simulation sim(cfg, replicate_rng(cfg.master_seed, 0));
  double worst_budget = 0.0;
  std::size_t violations = 0;
  std::string first;
  auto in_unit = [&](double x, const char* what, int t) {
    if (x >= 0.0 && x <= 1.0) return;
    if (violations++ == 0) first = std::string(what) + " = " + fmt("%g", x) + " at t=" + std::to_string(t);
  };
  for (int t = 1; t <= cfg.steps; ++t) {
    const DayRecord& d = sim.step();
    for (const auto& e : sim.employees()) {
      worst_budget = std::max(worst_budget, std::abs(e.alloc.total() - cfg.tau));
      if (bounds) {
        in_unit(e.satisfaction, "S", t);
        in_unit(e.beta, "beta", t);
      }
    }
    if (!bounds) continue;
    in_unit(d.strategy.sigma, "sigma", t);
    in_unit(d.strategy.mu, "mu", t);
    in_unit(d.strategy.lambda, "lambda", t);
    const auto& edges = sim.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (double w : edges.row(i)) in_unit(w, "e", t);
    }
    if (!is_missing(d.homophily_mean)) in_unit(d.homophily_mean, "homophily", t);
    for (double h : d.group_homophily) {
      if (!is_missing(h)) in_unit(h, "group homophily", t);
    }
  }
  if (!bounds) {
    return {worst_budget <= 1e-9, "max |s+c+p-tau| = " + fmt("%.3g", worst_budget) +
                                      " over 100 agents x 500 steps"};
  }
  return {violations == 0, violations == 0 ? "all values in [0,1] at every step"
                                           : std::to_string(violations) + " violations, first " + first};
}

// ---------------------------------------------------------------- 3

Verdict bonus_conservation() {
  double worst = 0.0;
  for (double lambda : {0.0, 0.3, 1.0}) {
    SimConfig cfg = property_config();
    cfg.init_strategy = {0.5, 1.0, lambda};
    cfg.endogenous_management = false;
    cfg.record_agents = true;
    const auto run = run_scenario(cfg, replicate_rng(cfg.master_seed, 0));
    for (const auto& d : simulated_days(run.records)) {
      std::vector<double> outputs;
      outputs.reserve(d.agents.size());
      for (const auto& a : d.agents) outputs.push_back(a.output);
      const auto b = bonuses(outputs, lambda);
      const double diff = std::accumulate(b.begin(), b.end(), 0.0) -
                          std::accumulate(outputs.begin(), outputs.end(), 0.0);
      worst = std::max(worst, std::abs(diff));
    }
  }
  return {worst < 1e-9, "max |sum B - sum O| = " + fmt("%.3g", worst) + " for lambda in {0, 0.3, 1}"};
}

// ---------------------------------------------------------------- 4

std::string export_text(const RunResult& run) {
  std::ostringstream os;
  write_records(os, ExportFormat::Csv, "Monthly", "0", simulated_days(run.records));
  std::vector<ValueType> types;
  for (const auto& e : run.final_employees) types.push_back(e.vtype);
  write_agent_traces(os, ExportFormat::Csv, "Monthly", "0", simulated_days(run.records), types);
  return os.str();
}

Verdict determinism(unsigned threads) {
  SimConfig cfg = property_config();
  cfg.record_agents = true;
  const std::string a = export_text(run_scenario(cfg, replicate_rng(7, 0)));
  const std::string b = export_text(run_scenario(cfg, replicate_rng(7, 0)));
  const bool same_export = a == b;

  cfg.record_agents = false;
  cfg.replicates = 4;
  cfg.master_seed = 7;
  auto mean_text = [&](unsigned th) {
    std::ostringstream os;
    write_records(os, ExportFormat::Csv, "Monthly", "mean", run_replicates(cfg, th).mean);
    return os.str();
  };
  const unsigned par = std::max(2u, threads);
  const bool same_mean = mean_text(1) == mean_text(par);
  return {same_export && same_mean,
          std::string("exports ") + (same_export ? "byte-identical" : "DIFFER") + " (" +
              std::to_string(a.size()) + " bytes); serial vs " + std::to_string(par) +
              "-thread aggregates " + (same_mean ? "identical" : "DIFFER")};
}

// ---------------------------------------------------------------- 5

Verdict sampler() {
  Rng rng(20240101);
  const TriangularParams p{0.0, 1.0, 2.0};
  const int n = 100000;
  double sum = 0.0;
  int outside = 0;
  for (int k = 0; k < n; ++k) {
    const double x = sample_triangular(p, rng);
    if (x < 0.0 || x > 2.0) ++outside;
    sum += x;
  }
  const double mean = sum / n;
  return {std::abs(mean - 1.0) <= 0.01 && outside == 0,
          "mean of 1e5 draws = " + fmt("%.5f", mean) + ", " + std::to_string(outside) + " outside [0,2]"};
}

// ---------------------------------------------------------------- 6

Verdict norm_oracle() {
  // Agent 0 meets 1 (weight 0.5) and 2 (weight 0.25); agent 1 meets only 0.
  const std::vector<TimeAllocation> behaviour{{1.0, 3.0, 4.0}, {2.0, 1.0, 5.0}, {0.5, 2.0, 5.5}};
  InteractionLog log(3);
  log.add(0, 1, 0.5);
  log.add(0, 2, 0.25);
  std::vector<Employee> emps(3);
  const double norms[3][2] = {{1.0, 3.0}, {1.5, 2.5}, {0.7, 1.9}};
  for (std::size_t i = 0; i < 3; ++i) {
    emps[i].id = i;
    emps[i].shirk_norm = norms[i][0];
    emps[i].coop_norm = norms[i][1];
  }
  const double h = 0.1;
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<std::pair<double, double>> s_partners, c_partners;
    for (const auto& x : log.partners(i)) {
      s_partners.push_back({x.weight, behaviour[x.partner].shirk});
      c_partners.push_back({x.weight, behaviour[x.partner].coop});
    }
    const auto [s, c] = update_norms(emps[i], log, behaviour, h);
    worst = std::max(worst, std::abs(s - oracle::norm_update(norms[i][0], s_partners, h)));
    worst = std::max(worst, std::abs(c - oracle::norm_update(norms[i][1], c_partners, h)));
  }
  // The worked values: 1.05 for the two-partner shirking norm, 1.1 for one partner.
  InteractionLog single(3);
  single.add(0, 1, 0.5);
  const double one = update_norms(emps[0], single, behaviour, h).first;
  const double two = update_norms(emps[0], log, behaviour, h).first;
  worst = std::max({worst, std::abs(one - 1.1), std::abs(two - 1.05)});
  return {worst <= 1e-12, "max deviation from hand computation = " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 7

Verdict interaction_oracle() {
  // Exhaustive: every processing order, caps in {0,1,2}^3, and d-values on a
  // grid that straddles each pair's similarity.
  const double tau = 8.0;
  const std::vector<TimeAllocation> allocs{{1.0, 3.0, 4.0}, {2.0, 2.0, 4.0}, {4.0, 0.0, 4.0}};
  std::vector<oracle::Alloc> o_allocs;
  for (const auto& a : allocs) o_allocs.push_back({a.shirk, a.coop, a.individual});
  const std::vector<double> d_grid{0.0, 0.2, 0.6, 0.8, 0.99};
  std::vector<std::size_t> order{0, 1, 2};
  std::size_t cases = 0, mismatches = 0;
  do {
    for (int cap_code = 0; cap_code < 27; ++cap_code) {
      const std::vector<int> caps{cap_code % 3, (cap_code / 3) % 3, cap_code / 9};
      for (double d01 : d_grid) {
        for (double d02 : d_grid) {
          for (double d12 : d_grid) {
            std::vector<std::vector<double>> d(3, std::vector<double>(3, 0.0));
            d[0][1] = d01;
            d[0][2] = d02;
            d[1][2] = d12;
            std::vector<std::vector<std::size_t>> lists{{1, 2}, {2, 0}, {0, 1}};
            const auto log = walk_interactions(
                std::span<const TimeAllocation>(allocs), tau, caps, order,
                [&](std::size_t i) { return ListCursor(lists[i]); },
                [&](std::size_t i, std::size_t j) {
                  const auto key = std::minmax(i, j);
                  return d[key.first][key.second];
                });
            const auto expected = oracle::enumerate_walk(o_allocs, tau, caps, order, lists, d);
            bool ok = log.total_pairs() == expected.size();
            for (const auto& [key, w] : expected) {
              ok = ok && log.interacted(key.first, key.second) &&
                   log.delta(key.first, key.second) == w && log.delta(key.second, key.first) == w;
            }
            ++cases;
            if (!ok) ++mismatches;
          }
        }
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {mismatches == 0, std::to_string(cases) + " pinned instances, " + std::to_string(mismatches) +
                               " mismatches"};
}

// ---------------------------------------------------------------- 8

Verdict closed_forms() {
  const double ego = expected_group_output(0.8, 0.5, 8.0);
  const std::vector<int> ww{50};
  const double beta = warning_scaling(ww, 100);
  return {ego == 3.6 && std::abs(beta - 0.8333) <= 1e-4,
          "EGO = " + fmt("%.17g", ego) + ", beta = " + fmt("%.6f", beta)};
}

// ---------------------------------------------------------------- 9

Verdict interaction_rate(double elapsed) {
  const SimConfig cfg = property_config();
  const auto run = run_scenario(cfg, replicate_rng(cfg.master_seed, 0));
  const auto days = simulated_days(run.records);
  double sum = 0.0;
  int count = 0;
  for (const auto& d : days) {
    if (d.t <= cfg.steps / 2) continue;
    sum += d.interactions_per_agent;
    ++count;
  }
  const double mean = sum / count;
  return {mean <= 3.57 + 0.2, "mean interactions per agent over days 251-500 = " + fmt("%.4f", mean) +
                                  "; property suite took " + fmt("%.1f s", elapsed)};
}

// ---------------------------------------------------------------- 10-14

struct ScenarioResult {
  std::string name;
  std::vector<DayRecord> mean;  // days 1..T
};

const DayRecord& final_day(const ScenarioResult& s) { return s.mean.back(); }

Verdict convergence(const std::vector<ScenarioResult>& all) {
  Verdict v;
  for (const auto& s : all) {
    if (s.name == "Base") continue;
    const auto& st = final_day(s).strategy;
    const bool ok = st.sigma < 0.1 && st.mu > 0.85 && st.lambda > 0.8;
    v.pass = v.pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s sigma=%.3f mu=%.3f lambda=%.3f%s", v.detail.empty() ? "" : "; ",
                  s.name.c_str(), st.sigma, st.mu, st.lambda, ok ? "" : " (miss)");
    v.detail += buf;
  }
  return v;
}

Verdict homophily_separation(const std::vector<ScenarioResult>& all) {
  Verdict v;
  for (const auto& s : all) {
    const auto& g = final_day(s).group_homophily;
    const std::size_t st = index_of(ValueType::SelfTranscendent);
    double others = 0.0;
    for (std::size_t k = 0; k < kValueTypeCount; ++k) {
      if (k != st) others += g[k];
    }
    others /= 3.0;
    const double ratio = g[st] / others;
    const bool ok = ratio >= 1.6 && ratio <= 2.4;
    v.pass = v.pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s ST=%.3f others=%.3f ratio=%.2f%s", v.detail.empty() ? "" : "; ",
                  s.name.c_str(), g[st], others, ratio, ok ? "" : " (miss)");
    v.detail += buf;
  }
  return v;
}

Verdict yearly_profitability(const std::vector<ScenarioResult>& all) {
  double yearly = 0.0;
  for (const auto& s : all) {
    if (s.name == "Yearly") yearly = final_day(s).profitability;
  }
  Verdict v;
  v.pass = yearly >= 0.24 && yearly <= 0.31;
  v.detail = "final profitability";
  for (const auto& s : all) {
    const double p = final_day(s).profitability;
    if (s.name != "Yearly" && p > yearly) v.pass = false;
    v.detail += " " + s.name + "=" + fmt("%.4f", p);
  }
  return v;
}

Verdict baseline_dominance(const std::vector<ScenarioResult>& all) {
  const ScenarioResult* base = nullptr;
  for (const auto& s : all) {
    if (s.name == "Base") base = &s;
  }
  Verdict v;
  v.detail = "relative cumulated profitability vs Base:";
  for (const auto& s : all) {
    if (&s == base) continue;
    const double rel = relative_cumulated_profitability(s.mean, base->mean).back();
    v.pass = v.pass && rel < 0.8;
    v.detail += " " + s.name + "=" + fmt("%.2f%%", 100.0 * rel);
  }
  return v;
}

Verdict correlation_signs(const std::vector<ScenarioResult>& all) {
  const ScenarioResult* monthly = nullptr;
  for (const auto& s : all) {
    if (s.name == "Monthly") monthly = &s;
  }
  const auto rows = correlation_table(monthly->mean);
  std::map<std::string, CorrelationRow> by_group;
  for (const auto& r : rows) by_group[r.group] = r;
  auto val = [](const std::optional<double>& x) { return x.value_or(std::nan("")); };
  Verdict v;
  for (const char* g : {"C", "O", "SE"}) {
    const double sp = val(by_group[g].sp);
    v.pass = v.pass && sp > 0.5;
    v.detail += std::string(g) + " SP=" + fmt("%.3f", sp) + " ";
  }
  const double st_sp = val(by_group["ST"].sp), st_hp = val(by_group["ST"].hp);
  v.pass = v.pass && st_sp < 0.0 && st_hp < -0.5;
  v.detail += "ST SP=" + fmt("%.3f", st_sp) + " ST HP=" + fmt("%.3f", st_hp);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int replicates = 30;
  int steps = 3650;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool properties_only = false;
  bool strict = false;
  app.add_option("--replicates", replicates, "Replicates per scenario for criteria 10-14")
      ->check(CLI::PositiveNumber);
  app.add_option("--steps", steps, "Steps per run for criteria 10-14")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--properties-only", properties_only, "Run only criteria 1-9");
  app.add_flag("--strict", strict, "Also fail the exit status on reproduction targets");
  CLI11_PARSE(app, argc, argv);

  const auto started = std::chrono::steady_clock::now();
  report(1, "budget conservation", budget_and_bounds(false));
  report(2, "bounds", budget_and_bounds(true));
  report(3, "bonus conservation", bonus_conservation());
  report(4, "determinism", determinism(threads));
  report(5, "triangular sampler", sampler());
  report(6, "norm-update oracle", norm_oracle());
  report(7, "interaction-phase oracle", interaction_oracle());
  report(8, "closed forms", closed_forms());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report(9, "interaction rate", interaction_rate(elapsed));

  if (!properties_only) {
    std::vector<ScenarioResult> all;
    const auto full_start = std::chrono::steady_clock::now();
    for (const auto& name : scenario_names()) {
      SimConfig cfg = *scenario_preset(name);
      cfg.replicates = replicates;
      cfg.steps = steps;
      auto result = run_replicates(cfg, threads);
      const auto days = simulated_days(result.mean);
      all.push_back({name, {days.begin(), days.end()}});
    }
    const double full =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - full_start).count();
    std::printf("       full setup: 5 scenarios x %d replicates x %d steps in %.1f s\n", replicates,
                steps, full);
    report(10, "strategy convergence", convergence(all));
    report(11, "ST homophily separation", homophily_separation(all));
    report(12, "Yearly profitability", yearly_profitability(all));
    report(13, "baseline dominance", baseline_dominance(all));
    report(14, "correlation signs (Monthly)", correlation_signs(all));
  }

  std::printf("property checks failed: %d; reproduction targets missed: %d\n", g_property_failures,
              g_reproduction_failures);
  if (g_property_failures > 0) return 1;
  if (strict && g_reproduction_failures > 0) return 1;
  return 0;
}
