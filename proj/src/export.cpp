#include "firmcas/export.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

namespace firmcas {

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "csv") return ExportFormat::Csv;
  if (s == "json" || s == "jsonl") return ExportFormat::JsonLines;
  return std::nullopt;
}

std::string_view file_extension(ExportFormat f) {
  return f == ExportFormat::Csv ? ".csv" : ".jsonl";
}

std::string format_double(double x) {
  if (is_missing(x)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Column {
  std::string name;
  std::function<double(const DayRecord&, std::size_t)> get;  // index = day position
};

std::string group_column(std::string_view prefix, ValueType v) {
  return std::string(prefix) + "_" + std::string(short_name(v));
}

// Columns after t/scenario/replicate, reading from a record and the
// precomputed cumulated / relative series.
std::vector<Column> numeric_columns(const std::vector<double>* cumulated,
                                    const std::vector<double>* relative) {
  std::vector<Column> cols;
  auto add = [&cols](std::string name, auto fn) {
    cols.push_back({std::move(name), [fn](const DayRecord& r, std::size_t) { return fn(r); }});
  };
  add("sigma", [](const DayRecord& r) { return r.strategy.sigma; });
  add("mu", [](const DayRecord& r) { return r.strategy.mu; });
  add("lambda", [](const DayRecord& r) { return r.strategy.lambda; });
  add("s_max", [](const DayRecord& r) { return r.s_max; });
  add("ego", [](const DayRecord& r) { return r.ego; });
  add("profitability", [](const DayRecord& r) { return r.profitability; });
  for (ValueType v : kValueTypes) {
    const std::size_t g = index_of(v);
    add(group_column("profitability", v), [g](const DayRecord& r) { return r.group_profitability[g]; });
  }
  add("satisfaction_mean", [](const DayRecord& r) { return r.satisfaction_mean; });
  for (ValueType v : kValueTypes) {
    const std::size_t g = index_of(v);
    add(group_column("satisfaction", v), [g](const DayRecord& r) { return r.group_satisfaction[g]; });
  }
  add("homophily_mean", [](const DayRecord& r) { return r.homophily_mean; });
  for (ValueType v : kValueTypes) {
    const std::size_t g = index_of(v);
    add(group_column("homophily", v), [g](const DayRecord& r) { return r.group_homophily[g]; });
  }
  add("verbal_warnings", [](const DayRecord& r) { return r.verbal_warnings; });
  add("written_warnings", [](const DayRecord& r) { return r.written_warnings; });
  cols.push_back({"cumulated_profitability",
                  [cumulated](const DayRecord&, std::size_t k) { return (*cumulated)[k]; }});
  cols.push_back({"relative_profitability", [relative](const DayRecord&, std::size_t k) {
                    return relative ? (*relative)[k] : kMissing;
                  }});
  add("mean_obs_shirk", [](const DayRecord& r) { return r.mean_obs_shirk; });
  add("mean_obs_coop", [](const DayRecord& r) { return r.mean_obs_coop; });
  add("mean_shirk", [](const DayRecord& r) { return r.mean_shirk; });
  add("mean_coop", [](const DayRecord& r) { return r.mean_coop; });
  add("mean_output", [](const DayRecord& r) { return r.mean_output; });
  add("total_output", [](const DayRecord& r) { return r.total_output; });
  add("total_reward", [](const DayRecord& r) { return r.total_reward; });
  add("interactions_per_agent", [](const DayRecord& r) { return r.interactions_per_agent; });
  return cols;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_number(double x) {
  if (is_missing(x) || std::isinf(x)) return "null";
  return format_double(x);
}

void write_rows(std::ostream& os, ExportFormat format,
                const std::vector<std::string>& key_names,
                const std::vector<std::string>& key_values,
                const std::vector<Column>& cols, std::span<const DayRecord> days) {
  if (format == ExportFormat::Csv) {
    std::string header = "t";
    for (const auto& k : key_names) header += "," + k;
    for (const auto& c : cols) header += "," + c.name;
    os << header << '\n';
  }
  for (std::size_t k = 0; k < days.size(); ++k) {
    const DayRecord& r = days[k];
    std::string line;
    if (format == ExportFormat::Csv) {
      line = std::to_string(r.t);
      for (const auto& v : key_values) line += "," + csv_field(v);
      for (const auto& c : cols) line += "," + format_double(c.get(r, k));
    } else {
      line = "{\"t\":" + std::to_string(r.t);
      for (std::size_t i = 0; i < key_names.size(); ++i) {
        line += "," + json_string(key_names[i]) + ":" + json_string(key_values[i]);
      }
      for (const auto& c : cols) line += "," + json_string(c.name) + ":" + json_number(c.get(r, k));
      line += "}";
    }
    os << line << '\n';
  }
}

}  // namespace

const std::vector<std::string>& export_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out{"t", "scenario", "replicate"};
    for (const auto& c : numeric_columns(nullptr, nullptr)) out.push_back(c.name);
    return out;
  }();
  return names;
}

void write_records(std::ostream& os, ExportFormat format, std::string_view scenario,
                   std::string_view replicate, std::span<const DayRecord> days,
                   std::span<const DayRecord> baseline) {
  const auto cumulated = cumulated_profitability(days);
  std::optional<std::vector<double>> relative;
  if (!baseline.empty()) relative = relative_cumulated_profitability(days, baseline);
  const auto cols = numeric_columns(&cumulated, relative ? &*relative : nullptr);
  write_rows(os, format, {"scenario", "replicate"},
             {std::string(scenario), std::string(replicate)}, cols, days);
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  os.flush();
  if (!os) throw IoError("failed writing " + path.string());
}

void export_records(const std::filesystem::path& path, ExportFormat format,
                    std::string_view scenario, std::string_view replicate,
                    std::span<const DayRecord> days, std::span<const DayRecord> baseline) {
  std::ostringstream os;
  write_records(os, format, scenario, replicate, days, baseline);
  write_text_file(path, os.str());
}

void write_agent_traces(std::ostream& os, ExportFormat format, std::string_view scenario,
                        std::string_view replicate, std::span<const DayRecord> days,
                        std::span<const ValueType> types) {
  static const char* names[] = {"agent", "type",   "shirk",  "coop",
                                "individual", "satisfaction", "output", "reward"};
  if (format == ExportFormat::Csv) {
    os << "t,scenario,replicate";
    for (const char* n : names) os << ',' << n;
    os << '\n';
  }
  for (const auto& r : days) {
    for (std::size_t i = 0; i < r.agents.size(); ++i) {
      const AgentDay& a = r.agents[i];
      const std::string type = i < types.size() ? std::string(short_name(types[i])) : "";
      const double values[] = {a.alloc.shirk, a.alloc.coop, a.alloc.individual,
                               a.satisfaction, a.output, a.reward};
      if (format == ExportFormat::Csv) {
        os << r.t << ',' << csv_field(scenario) << ',' << csv_field(replicate) << ',' << i << ','
           << type;
        for (double v : values) os << ',' << format_double(v);
      } else {
        os << "{\"t\":" << r.t << ",\"scenario\":" << json_string(scenario)
           << ",\"replicate\":" << json_string(replicate) << ",\"agent\":" << i
           << ",\"type\":" << json_string(type);
        for (std::size_t k = 0; k < 6; ++k) {
          os << ',' << json_string(names[k + 2]) << ':' << json_number(values[k]);
        }
        os << '}';
      }
      os << '\n';
    }
  }
}

void write_correlations(std::ostream& os, std::span<const NamedCorrelations> tables) {
  os << "scenario,replicate,group,sp,hp,sh\n";
  auto cell = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      os << csv_field(table.scenario) << ',' << csv_field(table.replicate) << ',' << row.group
         << ',' << cell(row.sp) << ',' << cell(row.hp) << ',' << cell(row.sh) << '\n';
    }
  }
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_data = false;
  char c;
  while (is.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      row_has_data = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_has_data = true;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_has_data = false;
    } else if (c != '\r') {
      field += c;
      row_has_data = true;
    }
  }
  if (row_has_data) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<DayRecord> read_records_csv(std::istream& is) {
  const auto rows = read_csv(is);
  std::vector<DayRecord> out;
  if (rows.empty()) return out;
  const auto& header = rows.front();

  auto parse = [](const std::string& s) { return s.empty() ? kMissing : std::strtod(s.c_str(), nullptr); };
  std::vector<std::function<void(DayRecord&, double)>> setters;
  for (const auto& name : header) {
    std::function<void(DayRecord&, double)> set;
    if (name == "t") set = [](DayRecord& r, double x) { r.t = static_cast<int>(x); };
    else if (name == "sigma") set = [](DayRecord& r, double x) { r.strategy.sigma = x; };
    else if (name == "mu") set = [](DayRecord& r, double x) { r.strategy.mu = x; };
    else if (name == "lambda") set = [](DayRecord& r, double x) { r.strategy.lambda = x; };
    else if (name == "s_max") set = [](DayRecord& r, double x) { r.s_max = x; };
    else if (name == "ego") set = [](DayRecord& r, double x) { r.ego = x; };
    else if (name == "profitability") set = [](DayRecord& r, double x) { r.profitability = x; };
    else if (name == "satisfaction_mean") set = [](DayRecord& r, double x) { r.satisfaction_mean = x; };
    else if (name == "homophily_mean") set = [](DayRecord& r, double x) { r.homophily_mean = x; };
    else if (name == "verbal_warnings") set = [](DayRecord& r, double x) { r.verbal_warnings = x; };
    else if (name == "written_warnings") set = [](DayRecord& r, double x) { r.written_warnings = x; };
    else if (name == "mean_obs_shirk") set = [](DayRecord& r, double x) { r.mean_obs_shirk = x; };
    else if (name == "mean_obs_coop") set = [](DayRecord& r, double x) { r.mean_obs_coop = x; };
    else if (name == "mean_shirk") set = [](DayRecord& r, double x) { r.mean_shirk = x; };
    else if (name == "mean_coop") set = [](DayRecord& r, double x) { r.mean_coop = x; };
    else if (name == "mean_output") set = [](DayRecord& r, double x) { r.mean_output = x; };
    else if (name == "total_output") set = [](DayRecord& r, double x) { r.total_output = x; };
    else if (name == "total_reward") set = [](DayRecord& r, double x) { r.total_reward = x; };
    else if (name == "interactions_per_agent") set = [](DayRecord& r, double x) { r.interactions_per_agent = x; };
    for (ValueType v : kValueTypes) {
      const std::size_t g = index_of(v);
      if (name == group_column("profitability", v)) set = [g](DayRecord& r, double x) { r.group_profitability[g] = x; };
      if (name == group_column("satisfaction", v)) set = [g](DayRecord& r, double x) { r.group_satisfaction[g] = x; };
      if (name == group_column("homophily", v)) set = [g](DayRecord& r, double x) { r.group_homophily[g] = x; };
    }
    setters.push_back(std::move(set));
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    DayRecord r;
    for (std::size_t c = 0; c < rows[k].size() && c < setters.size(); ++c) {
      if (setters[c]) setters[c](r, parse(rows[k][c]));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace firmcas
