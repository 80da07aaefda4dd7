#include "firmcas/network.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace firmcas {

void InteractionLog::add(std::size_t i, std::size_t j, double weight) {
  partners_[i].push_back({j, weight});
  partners_[j].push_back({i, weight});
}

bool InteractionLog::interacted(std::size_t i, std::size_t j) const {
  return std::any_of(partners_[i].begin(), partners_[i].end(),
                     [j](const Interaction& x) { return x.partner == j; });
}

double InteractionLog::delta(std::size_t i, std::size_t j) const {
  for (const auto& x : partners_[i]) {
    if (x.partner == j) return x.weight;
  }
  return 0.0;
}

std::size_t InteractionLog::total_pairs() const {
  std::size_t sum = 0;
  for (const auto& p : partners_) sum += p.size();
  return sum / 2;
}

double activity_difference(const TimeAllocation& a, const TimeAllocation& b, double tau) {
  if (!(tau > 0.0)) throw ConfigError("activity_difference: tau must be positive");
  return (std::abs(a.shirk - b.shirk) + std::abs(a.coop - b.coop) +
          std::abs(a.individual - b.individual)) /
         tau;
}

double activity_similarity(double ad) { return std::max(0.0, 1.0 - ad); }

CandidateCursor::CandidateCursor(std::size_t owner, const EdgeMatrix& edges, Rng& rng)
    : edges_(&edges), owner_(owner), rng_(&rng) {
  const auto row = edges.row(owner);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j == owner) continue;
    if (row[j] > 0.0) {
      peer_heap_.push_back(j);
    } else {
      strangers_.push_back(j);
    }
  }
  std::make_heap(peer_heap_.begin(), peer_heap_.end(),
                 [row](std::size_t a, std::size_t b) { return row[a] < row[b]; });
}

std::optional<std::size_t> CandidateCursor::next_peer() {
  if (tie_pos_ < tie_block_.size()) return tie_block_[tie_pos_++];
  if (peer_heap_.empty()) return std::nullopt;

  const auto row = edges_->row(owner_);
  auto cmp = [row](std::size_t a, std::size_t b) { return row[a] < row[b]; };
  tie_block_.clear();
  tie_pos_ = 0;
  const double top = row[peer_heap_.front()];
  while (!peer_heap_.empty() && row[peer_heap_.front()] == top) {
    std::pop_heap(peer_heap_.begin(), peer_heap_.end(), cmp);
    tie_block_.push_back(peer_heap_.back());
    peer_heap_.pop_back();
  }
  if (tie_block_.size() > 1) {
    // Heap pop order among equal keys is library-specific; normalise first.
    std::sort(tie_block_.begin(), tie_block_.end());
    rng_->shuffle(tie_block_.begin(), tie_block_.end());
  }
  return tie_block_[tie_pos_++];
}

std::optional<std::size_t> CandidateCursor::next() {
  if (auto peer = next_peer()) return peer;
  if (strangers_drawn_ >= strangers_.size()) return std::nullopt;
  const std::size_t remaining = strangers_.size() - strangers_drawn_;
  const std::size_t pick = strangers_drawn_ + rng_->below(remaining);
  std::swap(strangers_[strangers_drawn_], strangers_[pick]);
  return strangers_[strangers_drawn_++];
}

std::vector<std::size_t> interaction_candidates(std::size_t owner, const EdgeMatrix& edges,
                                                Rng& rng) {
  std::vector<std::size_t> out;
  CandidateCursor cursor(owner, edges, rng);
  while (auto j = cursor.next()) out.push_back(*j);
  return out;
}

int draw_interaction_cap(double lo, double hi, Rng& rng) {
  return static_cast<int>(std::lround(rng.uniform(lo, hi)));
}

InteractionLog run_interaction_phase(std::span<const TimeAllocation> allocs, double tau,
                                     const EdgeMatrix& edges, std::vector<int> caps, Rng& rng) {
  std::vector<std::size_t> order(allocs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order.begin(), order.end());
  // Each pair is checked at most once per day, so drawing d_ij at its check
  // has the same law as drawing the whole symmetric set up front.
  return walk_interactions(
      allocs, tau, std::move(caps), order,
      [&](std::size_t i) { return CandidateCursor(i, edges, rng); },
      [&](std::size_t, std::size_t) { return rng.uniform01(); });
}

void update_edges(EdgeMatrix& edges, const InteractionLog& log, int t) {
  const std::size_t n = edges.size();
  if (t <= 0) {
    edges = EdgeMatrix(n);
    return;
  }
  const double prev = static_cast<double>(t - 1);
  const double days = static_cast<double>(t);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) edges(i, j) *= prev;
    for (const auto& x : log.partners(i)) edges(i, x.partner) += x.weight;
    for (std::size_t j = 0; j < n; ++j) edges(i, j) /= days;
  }
}

std::pair<double, double> update_norms(const Employee& emp, const InteractionLog& log,
                                       std::span<const TimeAllocation> partner_behaviour,
                                       double h) {
  const auto partners = log.partners(emp.id);
  if (partners.empty()) return {emp.shirk_norm, emp.coop_norm};
  double weight_sum = 0.0;
  double shirk_sum = 0.0;
  double coop_sum = 0.0;
  for (const auto& x : partners) {
    weight_sum += x.weight;
    shirk_sum += x.weight * partner_behaviour[x.partner].shirk;
    coop_sum += x.weight * partner_behaviour[x.partner].coop;
  }
  return {(1.0 - h) * emp.shirk_norm + h * (shirk_sum / weight_sum),
          (1.0 - h) * emp.coop_norm + h * (coop_sum / weight_sum)};
}

}  // namespace firmcas
