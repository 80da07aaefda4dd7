#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "firmcas/core.h"
#include "firmcas/rng.h"

namespace firmcas {

/// Directed weighted adjacency of long-run interaction history. Weights stay
/// in [0,1]; the diagonal is always zero.
class EdgeMatrix {
 public:
  EdgeMatrix() = default;
  explicit EdgeMatrix(std::size_t n) : n_(n), w_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return w_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {w_.data() + i * n_, n_}; }

  bool operator==(const EdgeMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

struct Interaction {
  std::size_t partner = 0;
  double weight = 0.0;  // today's increment, equal to the pair's activity similarity
};

/// Today's symmetric interactions. Each realised pair is recorded on both sides
/// with the same weight.
class InteractionLog {
 public:
  InteractionLog() = default;
  explicit InteractionLog(std::size_t n) : partners_(n) {}

  std::size_t size() const { return partners_.size(); }
  void add(std::size_t i, std::size_t j, double weight);
  std::span<const Interaction> partners(std::size_t i) const { return partners_[i]; }
  std::size_t count(std::size_t i) const { return partners_[i].size(); }
  bool interacted(std::size_t i, std::size_t j) const;
  double delta(std::size_t i, std::size_t j) const;
  std::size_t total_pairs() const;

 private:
  std::vector<std::vector<Interaction>> partners_;
};

/// Sum of absolute activity differences divided by the budget; in [0, 2].
double activity_difference(const TimeAllocation& a, const TimeAllocation& b, double tau);

/// 1 - difference, floored at zero.
double activity_similarity(double ad);

/// Yields the agents `owner` checks today: existing peers by descending edge
/// weight (equal weights in random order), then everyone else in random
/// order. Ordering work is done lazily so a walk that stops early stays cheap.
class CandidateCursor {
 public:
  CandidateCursor(std::size_t owner, const EdgeMatrix& edges, Rng& rng);

  std::optional<std::size_t> next();

 private:
  std::optional<std::size_t> next_peer();

  const EdgeMatrix* edges_;
  std::size_t owner_;
  Rng* rng_;
  std::vector<std::size_t> peer_heap_;
  std::vector<std::size_t> tie_block_;
  std::size_t tie_pos_ = 0;
  std::vector<std::size_t> strangers_;
  std::size_t strangers_drawn_ = 0;
};

/// Full candidate list; mainly for inspection and tests.
std::vector<std::size_t> interaction_candidates(std::size_t owner, const EdgeMatrix& edges,
                                                Rng& rng);

/// Cursor over a fixed list.
class ListCursor {
 public:
  explicit ListCursor(std::vector<std::size_t> list) : list_(std::move(list)) {}
  std::optional<std::size_t> next() {
    if (pos_ >= list_.size()) return std::nullopt;
    return list_[pos_++];
  }

 private:
  std::vector<std::size_t> list_;
  std::size_t pos_ = 0;
};

/// Resolves one day of interactions for a fixed processing order.
///
/// Each agent in `order` walks the candidates produced by `make_cursor(i)`
/// until its cap is spent. A pair interacts when `draw(i, j) < AS_ij`, both
/// sides have cap left, and the pair was not checked before today; each pair
/// is checked at most once, so `draw` is consulted at most once per pair.
template <class CursorFactory, class PairDraw>
InteractionLog walk_interactions(std::span<const TimeAllocation> allocs, double tau,
                                 std::vector<int> caps, std::span<const std::size_t> order,
                                 CursorFactory&& make_cursor, PairDraw&& draw) {
  const std::size_t n = allocs.size();
  InteractionLog log(n);
  std::vector<char> checked(n * n, 0);
  for (std::size_t i : order) {
    if (caps[i] <= 0) continue;
    auto cursor = make_cursor(i);
    while (caps[i] > 0) {
      const std::optional<std::size_t> next = cursor.next();
      if (!next) break;
      const std::size_t j = *next;
      if (j == i || caps[j] <= 0 || checked[i * n + j]) continue;
      checked[i * n + j] = checked[j * n + i] = 1;
      const double similarity = activity_similarity(activity_difference(allocs[i], allocs[j], tau));
      if (draw(i, j) < similarity) {
        log.add(i, j, similarity);
        --caps[i];
        --caps[j];
      }
    }
  }
  return log;
}

/// Daily cap on interactions: a uniform draw on [lo, hi] rounded to the
/// nearest integer.
int draw_interaction_cap(double lo, double hi, Rng& rng);

/// The stochastic interaction phase: random processing order, lazily built
/// candidate lists, one uniform draw per checked pair.
InteractionLog run_interaction_phase(std::span<const TimeAllocation> allocs, double tau,
                                     const EdgeMatrix& edges, std::vector<int> caps, Rng& rng);

/// Running average of daily increments: e_t = ((t-1) e_{t-1} + de_t) / t.
void update_edges(EdgeMatrix& edges, const InteractionLog& log, int t);

/// New (shirk, coop) norms after today's interactions. `partner_behaviour`
/// holds the allocations partners are judged by (today's or yesterday's).
std::pair<double, double> update_norms(const Employee& emp, const InteractionLog& log,
                                       std::span<const TimeAllocation> partner_behaviour,
                                       double h);

}  // namespace firmcas
