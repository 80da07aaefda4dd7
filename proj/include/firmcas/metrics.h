#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "firmcas/network.h"
#include "firmcas/record.h"

namespace firmcas {

/// Weighted share of `i`'s edge mass pointing at peers of its own value type.
/// nullopt for an agent without peers.
std::optional<double> interaction_homophily(std::size_t i, const EdgeMatrix& edges,
                                            std::span<const ValueType> types);

struct HomophilySummary {
  double firm = kMissing;
  GroupValues groups{kMissing, kMissing, kMissing, kMissing};
};

/// Unweighted means over agents with defined homophily.
HomophilySummary summarize_homophily(const EdgeMatrix& edges, std::span<const ValueType> types);

/// Pearson correlation; nullopt for unequal or short series, or zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

/// Element-wise mean of equally long record series. Missing cells are left out
/// of each cell's mean; a cell missing everywhere stays missing. Throws
/// std::invalid_argument on an empty set or mismatched lengths.
std::vector<DayRecord> aggregate_replicates(std::span<const std::vector<DayRecord>> runs);
std::vector<DayRecord> aggregate_replicates(std::span<const std::vector<DayRecord>* const> runs);

/// Ratio of cumulated output to cumulated rewards up to each day.
std::vector<double> cumulated_profitability(std::span<const DayRecord> series);

/// Cumulated profitability of `run` divided by that of `baseline`, per day.
std::vector<double> relative_cumulated_profitability(std::span<const DayRecord> run,
                                                     std::span<const DayRecord> baseline);

/// Days 1..T of a series that starts with the day-zero snapshot.
std::span<const DayRecord> simulated_days(std::span<const DayRecord> records);

/// Satisfaction/profitability (SP), homophily/profitability (HP) and
/// satisfaction/homophily (SH) correlations for one value group.
struct CorrelationRow {
  std::string group;
  std::optional<double> sp;
  std::optional<double> hp;
  std::optional<double> sh;
};

/// Correlations for every group ("C", "O", "SE", "ST", then "firm") over the
/// given days. Days with missing homophily are dropped pairwise.
std::vector<CorrelationRow> correlation_table(std::span<const DayRecord> days);

}  // namespace firmcas
