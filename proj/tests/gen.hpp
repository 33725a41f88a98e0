#pragma once
#include "pbexact/election.hpp"
#include "pbexact/ordinal.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pbexact::gen {

// Small exact instances for property suites. Every candidate is forced a
// supporter so make_election never rejects; all rationals have tiny
// denominators to keep the exact arithmetic fast.

inline Rat small_rat(std::mt19937_64& rng, int max_num = 6, int max_den = 6) {
  std::uniform_int_distribution<int> den(1, max_den);
  int d = den(rng);
  std::uniform_int_distribution<int> num(1, std::min(max_num, d));
  return Rat(num(rng), d);
}

inline Election cardinal_election(std::mt19937_64& rng, int max_n = 8, int max_m = 8) {
  std::uniform_int_distribution<int> nd(1, max_n);
  std::uniform_int_distribution<int> md(1, max_m);
  const int n = nd(rng);
  const int m = md(rng);
  std::vector<std::pair<std::string, Rat>> cands;
  for (int c = 1; c <= m; ++c)
    cands.emplace_back("", small_rat(rng));
  std::vector<std::vector<std::pair<int, Rat>>> utils(n);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < n; ++i)
    for (int c = 1; c <= m; ++c)
      if (coin(rng) == 0) utils[i].emplace_back(c, small_rat(rng));
  // force a supporter per candidate
  std::uniform_int_distribution<int> vd(0, n - 1);
  for (int c = 1; c <= m; ++c) {
    bool seen = false;
    for (int i = 0; i < n && !seen; ++i)
      for (auto& [cc, u] : utils[i])
        if (cc == c) { seen = true; break; }
    if (!seen) utils[vd(rng)].emplace_back(c, small_rat(rng));
  }
  for (auto& row : utils)
    std::sort(row.begin(), row.end());
  return make_election(n, std::move(cands), std::move(utils));
}

inline Election approval_instance(std::mt19937_64& rng, int max_n = 8, int max_m = 8) {
  std::uniform_int_distribution<int> nd(1, max_n);
  std::uniform_int_distribution<int> md(1, max_m);
  const int n = nd(rng);
  const int m = md(rng);
  std::vector<std::pair<std::string, Rat>> cands;
  for (int c = 1; c <= m; ++c)
    cands.emplace_back("", small_rat(rng));
  std::vector<std::vector<int>> sets(n);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < n; ++i)
    for (int c = 1; c <= m; ++c)
      if (coin(rng) == 0) sets[i].push_back(c);
  std::uniform_int_distribution<int> vd(0, n - 1);
  for (int c = 1; c <= m; ++c) {
    bool seen = false;
    for (int i = 0; i < n && !seen; ++i)
      seen = std::find(sets[i].begin(), sets[i].end(), c) != sets[i].end();
    if (!seen) sets[vd(rng)].push_back(c);
  }
  for (auto& s : sets)
    std::sort(s.begin(), s.end());
  return approval_election(n, std::move(cands), sets);
}

inline RankedElection ranked_instance(std::mt19937_64& rng, int max_n = 8, int max_m = 6) {
  std::uniform_int_distribution<int> nd(1, max_n);
  std::uniform_int_distribution<int> md(1, max_m);
  const int n = nd(rng);
  const int m = md(rng);
  std::uniform_int_distribution<int> kd(1, m);
  const int k = kd(rng);
  std::vector<std::vector<int>> rankings(n);
  for (int i = 0; i < n; ++i) {
    rankings[i].resize(m);
    std::iota(rankings[i].begin(), rankings[i].end(), 1);
    std::shuffle(rankings[i].begin(), rankings[i].end(), rng);
  }
  return make_ranked_election(n, m, k, std::move(rankings));
}

} // namespace pbexact::gen
