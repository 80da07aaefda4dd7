#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "firmcas/network.h"
#include "support/oracles.h"

using namespace firmcas;
using doctest::Approx;

namespace {

oracle::Alloc to_oracle(const TimeAllocation& a) { return {a.shirk, a.coop, a.individual}; }

TimeAllocation random_alloc(Rng& rng, double tau) {
  double u1 = rng.uniform01(), u2 = rng.uniform01();
  if (u1 > u2) std::swap(u1, u2);
  return {u1 * tau, (u2 - u1) * tau, (1.0 - u2) * tau};
}

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("activity difference and similarity") {
    CHECK(activity_difference({2, 2, 4}, {2, 2, 4}, 8) == 0.0);
    CHECK(activity_difference({2, 2, 4}, {0, 4, 4}, 8) == 0.5);
    CHECK(activity_difference({8, 0, 0}, {0, 8, 0}, 8) == 2.0);
    CHECK(activity_similarity(0.0) == 1.0);
    CHECK(activity_similarity(0.5) == 0.5);
    CHECK(activity_similarity(2.0) == 0.0);
    CHECK_THROWS_AS(activity_difference({1, 1, 1}, {1, 1, 1}, 0.0), ConfigError);
  }

  TEST_CASE("empty network gives a permutation of everyone else") {
    EdgeMatrix edges(8);
    Rng rng(1);
    auto c = interaction_candidates(3, edges, rng);
    CHECK(c.size() == 7);
    std::sort(c.begin(), c.end());
    CHECK(c == std::vector<std::size_t>{0, 1, 2, 4, 5, 6, 7});
  }

  TEST_CASE("stranger order is uniform") {
    EdgeMatrix edges(4);
    Rng rng(2);
    std::array<int, 4> first{};
    const int n = 30000;
    for (int k = 0; k < n; ++k) ++first[interaction_candidates(0, edges, rng).front()];
    CHECK(first[0] == 0);
    for (int j = 1; j < 4; ++j) CHECK(first[j] == Approx(n / 3.0).epsilon(0.05));
  }

  TEST_CASE("peers come first in descending weight") {
    EdgeMatrix edges(6);
    edges(0, 4) = 0.9;
    edges(0, 2) = 0.2;
    edges(0, 5) = 0.5;
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
      const auto c = interaction_candidates(0, edges, rng);
      REQUIRE(c.size() == 5);
      CHECK(c[0] == 4);
      CHECK(c[1] == 5);
      CHECK(c[2] == 2);
      std::set<std::size_t> rest(c.begin() + 3, c.end());
      CHECK(rest == std::set<std::size_t>{1, 3});
    }
  }

  TEST_CASE("tied peers are shuffled fairly") {
    EdgeMatrix edges(5);
    edges(1, 2) = 0.5;
    edges(1, 3) = 0.5;
    Rng rng(4);
    int two_first = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
      const auto c = interaction_candidates(1, edges, rng);
      REQUIRE((c[0] == 2 || c[0] == 3));
      if (c[0] == 2) ++two_first;
    }
    CHECK(two_first == Approx(n / 2.0).epsilon(0.04));
  }

  TEST_CASE("interaction caps are rounded uniform draws") {
    Rng rng(5);
    std::array<int, 8> counts{};
    const int n = 71400;
    for (int k = 0; k < n; ++k) {
      const int cap = draw_interaction_cap(0.0, 7.14, rng);
      REQUIRE(cap >= 0);
      REQUIRE(cap <= 7);
      ++counts[cap];
    }
    // Interior integers own a unit interval, 0 owns half, 7 owns 0.64.
    CHECK(counts[0] == Approx(0.5 / 7.14 * n).epsilon(0.06));
    CHECK(counts[3] == Approx(1.0 / 7.14 * n).epsilon(0.04));
    CHECK(counts[7] == Approx(0.64 / 7.14 * n).epsilon(0.06));
  }

  TEST_CASE("walk matches a literal replay of the rule") {
    const double tau = 8.0;
    Rng rng(6);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t n = 3 + trial % 6;
      std::vector<TimeAllocation> allocs(n);
      std::vector<oracle::Alloc> o_allocs(n);
      for (std::size_t i = 0; i < n; ++i) {
        // Occasionally duplicate allocations so that AS = 1 shows up.
        allocs[i] = (i > 0 && rng.uniform01() < 0.2) ? allocs[i - 1] : random_alloc(rng, tau);
        o_allocs[i] = to_oracle(allocs[i]);
      }
      std::vector<int> caps(n);
      for (auto& c : caps) c = static_cast<int>(rng.below(4));
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      rng.shuffle(order.begin(), order.end());
      std::vector<std::vector<std::size_t>> lists(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) lists[i].push_back(j);
        }
        rng.shuffle(lists[i].begin(), lists[i].end());
      }
      std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = rng.uniform01();
      }

      std::set<std::pair<std::size_t, std::size_t>> draws_seen;
      bool repeated_draw = false;
      const auto log = walk_interactions(
          std::span<const TimeAllocation>(allocs), tau, caps, order,
          [&](std::size_t i) { return ListCursor(lists[i]); },
          [&](std::size_t i, std::size_t j) {
            const auto key = std::minmax(i, j);
            if (!draws_seen.insert(key).second) repeated_draw = true;
            return d[key.first][key.second];
          });
      const auto expected = oracle::enumerate_walk(o_allocs, tau, caps, order, lists, d);

      CHECK_FALSE(repeated_draw);
      REQUIRE(log.total_pairs() == expected.size());
      for (const auto& [key, w] : expected) {
        CHECK(log.interacted(key.first, key.second));
        CHECK(log.delta(key.first, key.second) == w);
        CHECK(log.delta(key.second, key.first) == w);
      }
      for (std::size_t i = 0; i < n; ++i) CHECK(log.count(i) <= static_cast<std::size_t>(caps[i]));
    }
  }

  TEST_CASE("interaction phase is symmetric and honours caps") {
    const std::size_t n = 40;
    Rng rng(7);
    EdgeMatrix edges(n);
    std::vector<TimeAllocation> allocs(n);
    for (int day = 1; day <= 60; ++day) {
      std::vector<int> caps(n);
      for (std::size_t i = 0; i < n; ++i) {
        allocs[i] = random_alloc(rng, 8.0);
        caps[i] = draw_interaction_cap(0.0, 7.14, rng);
      }
      const auto log = run_interaction_phase(allocs, 8.0, edges, caps, rng);
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(log.count(i) <= static_cast<std::size_t>(caps[i]));
        std::set<std::size_t> seen;
        for (const auto& x : log.partners(i)) {
          REQUIRE(x.partner != i);
          REQUIRE(seen.insert(x.partner).second);
          REQUIRE(x.weight > 0.0);
          REQUIRE(x.weight <= 1.0);
          REQUIRE(log.delta(x.partner, i) == x.weight);
        }
      }
      update_edges(edges, log, day);
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(edges(i, i) == 0.0);
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE(edges(i, j) >= 0.0);
          REQUIRE(edges(i, j) <= 1.0);
          REQUIRE(edges(i, j) == edges(j, i));
        }
      }
    }
  }

  TEST_CASE("edge running average") {
    EdgeMatrix edges(2);
    InteractionLog log(2);
    log.add(0, 1, 0.7);
    update_edges(edges, log, 1);
    CHECK(edges(0, 1) == Approx(0.7));
    CHECK(edges(1, 0) == Approx(0.7));

    edges(0, 1) = edges(1, 0) = 0.5;
    update_edges(edges, InteractionLog(2), 10);
    CHECK(edges(0, 1) == Approx(0.45));

    // Without interactions the weight decays as t0/t.
    edges(0, 1) = edges(1, 0) = 0.6;
    for (int t = 21; t <= 200; ++t) update_edges(edges, InteractionLog(2), t);
    CHECK(edges(0, 1) == Approx(0.6 * 20.0 / 200.0));

    update_edges(edges, InteractionLog(2), 0);
    CHECK(edges(0, 1) == 0.0);
  }

  TEST_CASE("norm updates") {
    Employee e;
    e.id = 0;
    e.shirk_norm = 1.0;
    e.coop_norm = 3.0;
    std::vector<TimeAllocation> behaviour{{0, 0, 8}, {2.0, 1.0, 5.0}, {0.5, 2.0, 5.5}};

    InteractionLog none(3);
    CHECK(update_norms(e, none, behaviour, 0.1) == std::pair{1.0, 3.0});

    InteractionLog one(3);
    one.add(0, 1, 0.5);
    auto [s1, c1] = update_norms(e, one, behaviour, 0.1);
    CHECK(s1 == Approx(1.1));
    CHECK(std::abs(s1 - oracle::norm_update(1.0, {{0.5, 2.0}}, 0.1)) < 1e-12);
    CHECK(std::abs(c1 - oracle::norm_update(3.0, {{0.5, 1.0}}, 0.1)) < 1e-12);

    InteractionLog two(3);
    two.add(0, 1, 0.5);
    two.add(2, 0, 0.25);
    auto [s2, c2] = update_norms(e, two, behaviour, 0.1);
    CHECK(s2 == Approx(1.05));
    CHECK(std::abs(c2 - oracle::norm_update(3.0, {{0.5, 1.0}, {0.25, 2.0}}, 0.1)) < 1e-12);
  }

  TEST_CASE("norm update equals the oracle on random neighbourhoods") {
    Rng rng(8);
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t n = 2 + rng.below(10);
      std::vector<TimeAllocation> behaviour(n);
      for (auto& b : behaviour) b = random_alloc(rng, 8.0);
      InteractionLog log(n);
      std::vector<std::pair<double, double>> s_partners, c_partners;
      for (std::size_t j = 1; j < n; ++j) {
        if (rng.uniform01() < 0.5) continue;
        const double w = 1e-3 + rng.uniform01();
        log.add(0, j, std::min(w, 1.0));
        s_partners.push_back({std::min(w, 1.0), behaviour[j].shirk});
        c_partners.push_back({std::min(w, 1.0), behaviour[j].coop});
      }
      Employee e;
      e.shirk_norm = rng.uniform(0, 4);
      e.coop_norm = rng.uniform(0, 4);
      const double h = rng.uniform(0.01, 0.99);
      const auto [s, c] = update_norms(e, log, behaviour, h);
      REQUIRE(std::abs(s - oracle::norm_update(e.shirk_norm, s_partners, h)) < 1e-12);
      REQUIRE(std::abs(c - oracle::norm_update(e.coop_norm, c_partners, h)) < 1e-12);
    }
  }
}
