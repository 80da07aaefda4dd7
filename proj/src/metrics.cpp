#include "firmcas/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace firmcas {

std::optional<double> interaction_homophily(std::size_t i, const EdgeMatrix& edges,
                                            std::span<const ValueType> types) {
  const auto row = edges.row(i);
  double total = 0.0;
  double same = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j == i) continue;
    total += row[j];
    if (types[j] == types[i]) same += row[j];
  }
  if (!(total > 0.0)) return std::nullopt;
  return same / total;
}

HomophilySummary summarize_homophily(const EdgeMatrix& edges, std::span<const ValueType> types) {
  HomophilySummary out;
  double firm_sum = 0.0;
  int firm_count = 0;
  GroupValues sums{};
  std::array<int, kValueTypeCount> counts{};
  for (std::size_t i = 0; i < types.size(); ++i) {
    const auto h = interaction_homophily(i, edges, types);
    if (!h) continue;
    firm_sum += *h;
    ++firm_count;
    sums[index_of(types[i])] += *h;
    ++counts[index_of(types[i])];
  }
  if (firm_count > 0) out.firm = firm_sum / firm_count;
  for (std::size_t g = 0; g < kValueTypeCount; ++g) {
    if (counts[g] > 0) out.groups[g] = sums[g] / counts[g];
  }
  return out;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mx;
    const double dy = ys[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<DayRecord> aggregate_replicates(std::span<const std::vector<DayRecord>> runs) {
  std::vector<const std::vector<DayRecord>*> ptrs;
  ptrs.reserve(runs.size());
  for (const auto& r : runs) ptrs.push_back(&r);
  return aggregate_replicates(std::span<const std::vector<DayRecord>* const>(ptrs));
}

std::vector<DayRecord> aggregate_replicates(std::span<const std::vector<DayRecord>* const> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate_replicates: no runs");
  const std::size_t len = runs.front()->size();
  for (const auto* r : runs) {
    if (r->size() != len) throw std::invalid_argument("aggregate_replicates: length mismatch");
  }

  std::vector<DayRecord> out(len);
  std::vector<double> sums;
  std::vector<int> counts;
  for (std::size_t d = 0; d < len; ++d) {
    sums.clear();
    counts.clear();
    for (const auto* run : runs) {
      std::size_t field = 0;
      visit_numeric_fields((*run)[d], [&](const double& x) {
        if (field == sums.size()) {
          sums.push_back(0.0);
          counts.push_back(0);
        }
        if (!is_missing(x)) {
          sums[field] += x;
          ++counts[field];
        }
        ++field;
      });
    }
    DayRecord& mean = out[d];
    mean.t = (*runs.front())[d].t;
    std::size_t field = 0;
    visit_numeric_fields(mean, [&](double& x) {
      x = counts[field] > 0 ? sums[field] / counts[field] : kMissing;
      ++field;
    });
  }
  return out;
}

std::vector<double> cumulated_profitability(std::span<const DayRecord> series) {
  std::vector<double> out;
  out.reserve(series.size());
  double output = 0.0;
  double rewards = 0.0;
  for (const auto& r : series) {
    output += r.total_output;
    rewards += r.total_reward;
    out.push_back(rewards > 0.0 ? output / rewards : kMissing);
  }
  return out;
}

std::vector<double> relative_cumulated_profitability(std::span<const DayRecord> run,
                                                     std::span<const DayRecord> baseline) {
  if (run.size() != baseline.size()) {
    throw std::invalid_argument("relative_cumulated_profitability: length mismatch");
  }
  const auto a = cumulated_profitability(run);
  const auto b = cumulated_profitability(baseline);
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] = b[k] > 0.0 ? a[k] / b[k] : kMissing;
  }
  return out;
}

std::span<const DayRecord> simulated_days(std::span<const DayRecord> records) {
  if (!records.empty() && records.front().t == 0) return records.subspan(1);
  return records;
}

namespace {

std::optional<double> pairwise_pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> a;
  std::vector<double> b;
  a.reserve(xs.size());
  b.reserve(ys.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (is_missing(xs[k]) || is_missing(ys[k])) continue;
    a.push_back(xs[k]);
    b.push_back(ys[k]);
  }
  return pearson(a, b);
}

}  // namespace

std::vector<CorrelationRow> correlation_table(std::span<const DayRecord> days) {
  std::vector<CorrelationRow> out;
  auto row = [&](std::string name, auto sat, auto prof, auto hom) {
    std::vector<double> s, p, h;
    for (const auto& d : days) {
      s.push_back(sat(d));
      p.push_back(prof(d));
      h.push_back(hom(d));
    }
    out.push_back({std::move(name), pairwise_pearson(s, p), pairwise_pearson(h, p),
                   pairwise_pearson(s, h)});
  };
  for (ValueType v : kValueTypes) {
    const std::size_t g = index_of(v);
    row(std::string(short_name(v)), [g](const DayRecord& d) { return d.group_satisfaction[g]; },
        [g](const DayRecord& d) { return d.group_profitability[g]; },
        [g](const DayRecord& d) { return d.group_homophily[g]; });
  }
  row("firm", [](const DayRecord& d) { return d.satisfaction_mean; },
      [](const DayRecord& d) { return d.profitability; },
      [](const DayRecord& d) { return d.homophily_mean; });
  return out;
}

}  // namespace firmcas
