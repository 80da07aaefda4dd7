#include "firmcas/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "firmcas/config_io.h"
#include "firmcas/engine.h"
#include "firmcas/export.h"
#include "firmcas/metrics.h"

namespace firmcas {

namespace fs = std::filesystem;

namespace {

// Flags shared by every subcommand. Optional fields stay unset unless given
// on the command line so that they override the config file only then.
struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> steps;
  std::optional<unsigned> threads;
  std::string out = "out";
  std::string format = "csv";
  std::string config;
  std::string scenario;
  std::vector<std::string> settings;
  bool per_agent = false;
  bool per_replicate = false;
  bool quiet = false;
};

void add_common(CLI::App* app, CommonOptions& o, std::string default_scenario) {
  o.scenario = std::move(default_scenario);
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--replicates", o.replicates, "Replicates per configuration")
      ->check(CLI::PositiveNumber);
  app->add_option("--steps", o.steps, "Simulated days per run")->check(CLI::NonNegativeNumber);
  app->add_option("--threads", o.threads, "Worker threads for replicates (default: all cores)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "Output directory")->capture_default_str();
  app->add_option("--format", o.format, "Series format")
      ->check(CLI::IsMember({"csv", "json", "jsonl"}))
      ->capture_default_str();
  app->add_option("--config", o.config, "Flat key = value configuration file");
  app->add_option("--set", o.settings, "Override one setting, key=value (repeatable)");
  app->add_flag("--per-agent", o.per_agent, "Also write per-agent traces of every replicate");
  app->add_flag("--per-replicate", o.per_replicate, "Also write the series of every replicate");
  app->add_flag("--quiet", o.quiet, "No progress messages");
}

struct Context {
  SimConfig cfg;
  ExportFormat format = ExportFormat::Csv;
  fs::path out;
  unsigned threads = 1;
  bool per_agent = false;
  bool per_replicate = false;
  std::ostream* log = nullptr;
};

SimConfig with_preset(const std::string& name, const SimConfig& cfg) {
  auto preset = scenario_preset(name, cfg);
  if (!preset) throw ConfigError("unknown scenario '" + name + "'");
  return *preset;
}

// The subcommand's default scenario, then the config file, then an explicit
// --scenario, then the remaining flags.
Context make_context(const CommonOptions& o, bool scenario_given, std::ostream& err) {
  Context ctx;
  ctx.cfg = with_preset(scenario_given ? "Base" : o.scenario, ctx.cfg);
  if (!o.config.empty()) apply_config_file(ctx.cfg, o.config);
  if (scenario_given) ctx.cfg = with_preset(o.scenario, ctx.cfg);
  for (const auto& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_setting(ctx.cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) ctx.cfg.master_seed = *o.seed;
  if (o.replicates) ctx.cfg.replicates = *o.replicates;
  if (o.steps) ctx.cfg.steps = *o.steps;
  ctx.cfg.record_agents = o.per_agent;

  if (const auto violations = validate_config(ctx.cfg); !violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
  ctx.format = *parse_export_format(o.format);
  ctx.out = o.out;
  ctx.threads = o.threads.value_or(std::max(1u, std::thread::hardware_concurrency()));
  ctx.per_agent = o.per_agent;
  ctx.per_replicate = o.per_replicate;
  ctx.log = o.quiet ? nullptr : &err;
  return ctx;
}

std::string series_name(std::string_view stem, ExportFormat f) {
  return std::string(stem) + std::string(file_extension(f));
}

void progress(const Context& ctx, const std::string& msg) {
  if (ctx.log) *ctx.log << msg << '\n';
}

// Writes the mean series and, on request, every replicate's series and
// per-agent traces. Returns the file name of the mean series.
std::string write_result(const Context& ctx, const std::string& stem, const std::string& scenario,
                         const AggregateResult& result, std::span<const DayRecord> baseline) {
  const std::string file = series_name(stem, ctx.format);
  export_records(ctx.out / file, ctx.format, scenario, "mean", simulated_days(result.mean),
                 baseline);
  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    const auto& run = result.runs[k];
    const std::string rep = std::to_string(k);
    if (ctx.per_replicate) {
      export_records(ctx.out / series_name(stem + "_rep" + rep, ctx.format), ctx.format, scenario,
                     rep, simulated_days(run.records), baseline);
    }
    if (ctx.per_agent) {
      std::vector<ValueType> types;
      for (const auto& e : run.final_employees) types.push_back(e.vtype);
      std::ostringstream os;
      write_agent_traces(os, ctx.format, scenario, rep, simulated_days(run.records), types);
      write_text_file(ctx.out / series_name(stem + "_agents_rep" + rep, ctx.format), os.str());
    }
  }
  return file;
}

AggregateResult simulate(const Context& ctx, const SimConfig& cfg, const std::string& label) {
  auto result = run_replicates(cfg, ctx.threads);
  progress(ctx, label + ": " + std::to_string(cfg.replicates) + " replicates x " +
                    std::to_string(cfg.steps) + " steps done");
  return result;
}

int cmd_run(const CommonOptions& o, bool scenario_given, bool with_baseline, std::ostream& err) {
  Context ctx = make_context(o, scenario_given, err);
  const auto result = simulate(ctx, ctx.cfg, ctx.cfg.scenario);

  std::vector<DayRecord> baseline;
  if (ctx.cfg.scenario == "Base" && !ctx.cfg.endogenous_management) {
    baseline = result.mean;
  } else if (with_baseline) {
    const auto base = *scenario_preset("Base", ctx.cfg);
    baseline = simulate(ctx, base, "Base").mean;
  }
  const auto base_days = baseline.empty() ? std::span<const DayRecord>{} : simulated_days(baseline);
  write_result(ctx, ctx.cfg.scenario, ctx.cfg.scenario, result, base_days);
  return kExitOk;
}

int cmd_scenarios(const CommonOptions& o, std::ostream& err) {
  Context ctx = make_context(o, false, err);

  std::vector<DayRecord> base_mean;
  std::ostringstream relative;
  relative << "scenario,relative_cumulated_profitability,percent,final_profitability\n";
  std::vector<NamedCorrelations> correlations;

  for (const auto& name : scenario_names()) {
    const SimConfig cfg = *scenario_preset(name, ctx.cfg);
    const auto result = simulate(ctx, cfg, name);
    if (name == "Base") base_mean = result.mean;
    const auto base_days = simulated_days(base_mean);
    write_result(ctx, name, name, result, base_days);

    const auto days = simulated_days(result.mean);
    if (!days.empty()) {
      const double rel = relative_cumulated_profitability(days, base_days).back();
      relative << name << ',' << format_double(rel) << ',' << format_double(100.0 * rel) << ','
               << format_double(days.back().profitability) << '\n';
    }
    correlations.push_back({name, "mean", correlation_table(days)});
    for (std::size_t k = 0; k < result.runs.size(); ++k) {
      correlations.push_back(
          {name, std::to_string(k), correlation_table(simulated_days(result.runs[k].records))});
    }
  }
  write_text_file(ctx.out / "relative_profitability.csv", relative.str());
  std::ostringstream corr;
  write_correlations(corr, correlations);
  write_text_file(ctx.out / "correlations.csv", corr.str());
  return kExitOk;
}

struct GridAxis {
  std::string key;
  std::vector<std::string> values;
};

std::vector<GridAxis> parse_grid(const std::vector<std::string>& specs) {
  std::vector<GridAxis> axes;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw ConfigError("--grid expects key=v1,v2,..., got '" + spec + "'");
    }
    GridAxis axis{spec.substr(0, eq), {}};
    if (!is_sweepable(axis.key)) {
      std::string msg = "parameter '" + axis.key + "' is not sweepable; choose from:";
      for (const auto& k : sweepable_keys()) msg += " " + k;
      throw ConfigError(msg);
    }
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string v; std::getline(ss, v, ',');) {
      if (v.empty()) throw ConfigError("empty value in --grid " + spec);
      axis.values.push_back(v);
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

// Runs every point of the Cartesian grid and writes one series per point plus
// manifest.json. An empty grid produces only the manifest.
void run_grid(const Context& ctx, const std::vector<GridAxis>& axes, const std::string& label) {
  using nlohmann::ordered_json;
  ordered_json manifest;
  manifest["scenario"] = ctx.cfg.scenario;
  manifest["seed"] = ctx.cfg.master_seed;
  manifest["replicates"] = ctx.cfg.replicates;
  manifest["steps"] = ctx.cfg.steps;
  manifest["format"] = ctx.format == ExportFormat::Csv ? "csv" : "jsonl";
  manifest["parameters"] = ordered_json::array();
  for (const auto& a : axes) manifest["parameters"].push_back(a.key);
  manifest["points"] = ordered_json::array();

  std::size_t total = axes.empty() ? 0 : 1;
  for (const auto& a : axes) total *= a.values.size();

  // Validate every point before spending time on any simulation.
  std::vector<SimConfig> configs;
  std::vector<std::vector<std::string>> point_values;
  for (std::size_t idx = 0; idx < total; ++idx) {
    SimConfig cfg = ctx.cfg;
    std::vector<std::string> values(axes.size());
    std::size_t rest = idx;
    for (std::size_t a = axes.size(); a-- > 0;) {
      values[a] = axes[a].values[rest % axes[a].values.size()];
      rest /= axes[a].values.size();
    }
    for (std::size_t a = 0; a < axes.size(); ++a) apply_setting(cfg, axes[a].key, values[a]);
    if (const auto violations = validate_config(cfg); !violations.empty()) {
      std::string msg = "invalid grid point " + std::to_string(idx) + ":";
      for (const auto& v : violations) msg += "\n  - " + v;
      throw ConfigError(msg);
    }
    configs.push_back(std::move(cfg));
    point_values.push_back(std::move(values));
  }

  for (std::size_t idx = 0; idx < total; ++idx) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "point_%03zu", idx);
    ordered_json settings = ordered_json::object();
    std::string desc;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      settings[axes[a].key] = point_values[idx][a];
      desc += (a ? " " : "") + axes[a].key + "=" + point_values[idx][a];
    }
    const auto result = simulate(ctx, configs[idx], label + " " + desc);
    const std::string file = write_result(ctx, stem, configs[idx].scenario, result, {});
    manifest["points"].push_back({{"index", idx}, {"settings", settings}, {"file", file}});
  }
  write_text_file(ctx.out / "manifest.json", manifest.dump(2) + "\n");
}

int cmd_sweep(const CommonOptions& o, bool scenario_given, const std::vector<std::string>& grid,
              std::ostream& err) {
  Context ctx = make_context(o, scenario_given, err);
  run_grid(ctx, parse_grid(grid), "sweep");
  return kExitOk;
}

int cmd_sensitivity(const CommonOptions& o, bool scenario_given, const std::string& param,
                    std::ostream& err) {
  static const std::vector<std::string> kStrategyValues{"0", "0.25", "0.5", "0.75", "1"};
  static const std::vector<std::string> kMethods{"Randomly", "Equally", "Kappa", "KappaNoShirk"};
  Context ctx = make_context(o, scenario_given, err);

  std::vector<std::string> params{param};
  if (param == "all") params = {"sigma0", "mu0", "lambda0", "time_init_method"};
  const fs::path root = ctx.out;
  for (const auto& p : params) {
    Context sub = ctx;
    sub.out = params.size() > 1 ? root / p : root;
    const auto& values = p == "time_init_method" ? kMethods : kStrategyValues;
    run_grid(sub, {GridAxis{p, values}}, "sensitivity");
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agent-based simulation of a firm with value-driven employees, an emergent "
               "social network and an adaptive management.",
               "firmcas"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  CommonOptions run_opts, scen_opts, sweep_opts, sens_opts;
  bool with_baseline = false;
  std::vector<std::string> grid;
  std::string param = "all";

  auto* run = app.add_subcommand("run", "Run one scenario and write its replicate-mean series");
  add_common(run, run_opts, "Base");
  auto* run_scenario_opt =
      run->add_option("--scenario", run_opts.scenario, "Base, Daily, Monthly, Biannually or Yearly")
          ->capture_default_str();
  run->add_flag("--baseline", with_baseline,
                "Also run Base to fill the relative_profitability column");

  auto* scen = app.add_subcommand("scenarios", "Run all five scenarios, relative profitability "
                                               "and correlation tables");
  add_common(scen, scen_opts, "Base");

  auto* sweep = app.add_subcommand("sweep", "Cartesian parameter grid; one file per point");
  add_common(sweep, sweep_opts, "Monthly");
  auto* sweep_scenario_opt =
      sweep->add_option("--scenario", sweep_opts.scenario, "Scenario the grid starts from")
          ->capture_default_str();
  sweep->add_option("--grid", grid, "key=v1,v2,... (repeatable)");

  auto* sens = app.add_subcommand("sensitivity", "One-at-a-time scans of initial strategy values "
                                                 "and time initialisation methods");
  add_common(sens, sens_opts, "Monthly");
  auto* sens_scenario_opt =
      sens->add_option("--scenario", sens_opts.scenario, "Scenario the scans start from")
          ->capture_default_str();
  sens->add_option("--param", param, "Parameter to scan")
      ->check(CLI::IsMember({"sigma0", "mu0", "lambda0", "time_init_method", "all"}))
      ->capture_default_str();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, run_scenario_opt->count() > 0, with_baseline, err);
    if (scen->parsed()) return cmd_scenarios(scen_opts, err);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_scenario_opt->count() > 0, grid, err);
    if (sens->parsed()) return cmd_sensitivity(sens_opts, sens_scenario_opt->count() > 0, param, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace firmcas
