#pragma once

// Independent reference computations used by the tests. They are written
// from the model definitions directly and share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

struct Alloc {
  double s, c, p;
};

inline double similarity(const Alloc& a, const Alloc& b, double tau) {
  const double ad = (std::fabs(a.s - b.s) + std::fabs(a.c - b.c) + std::fabs(a.p - b.p)) / tau;
  return ad >= 1.0 ? 0.0 : 1.0 - ad;
}

// Realised pairs of one interaction day, keyed (min, max) -> weight.
using PairSet = std::map<std::pair<std::size_t, std::size_t>, double>;

// Literal replay of the interaction rule: agents in `order` walk their
// candidate lists; a pair meets iff d < AS, both caps are positive and the
// pair has not been considered yet today.
inline PairSet enumerate_walk(const std::vector<Alloc>& allocs, double tau,
                              std::vector<int> caps,
                              const std::vector<std::size_t>& order,
                              const std::vector<std::vector<std::size_t>>& candidates,
                              const std::vector<std::vector<double>>& d) {
  PairSet met;
  std::set<std::pair<std::size_t, std::size_t>> considered;
  for (std::size_t i : order) {
    for (std::size_t j : candidates[i]) {
      if (caps[i] == 0) break;
      const auto key = std::minmax(i, j);
      if (i == j || caps[j] == 0 || considered.count(key)) continue;
      considered.insert(key);
      const double as = similarity(allocs[i], allocs[j], tau);
      if (d[key.first][key.second] < as) {
        met[key] = as;
        caps[i] -= 1;
        caps[j] -= 1;
      }
    }
  }
  return met;
}

// Weighted partner mean norm update for one agent.
inline double norm_update(double old_norm, const std::vector<std::pair<double, double>>& partners,
                          double h) {
  if (partners.empty()) return old_norm;
  double num = 0.0, den = 0.0;
  for (auto [w, x] : partners) {
    num += w * x;
    den += w;
  }
  return (1.0 - h) * old_norm + h * num / den;
}

inline double triangular_mean(double a, double m, double b) { return (a + m + b) / 3.0; }

inline double triangular_variance(double a, double m, double b) {
  return (a * a + m * m + b * b - a * m - a * b - m * b) / 18.0;
}

// Two-pass Pearson correlation in long double.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

}  // namespace oracle
