#include "pbexact/pav.hpp"

#include "pbexact/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

namespace pbexact {

namespace {

struct Blocks {
  std::vector<uint64_t> mask;
  std::vector<long long> size;
};

Blocks approval_masks(const Election& e) {
  VoterBlocks vb = voter_blocks(e);
  Blocks out;
  out.mask.reserve(vb.count());
  out.size.reserve(vb.count());
  for (const auto& members : vb.members) {
    uint64_t mask = 0;
    for (const auto& [c, u] : e.utils[members.front()]) mask |= uint64_t(1) << (c - 1);
    out.mask.push_back(mask);
    out.size.push_back((long long)members.size());
  }
  return out;
}

std::vector<Rat> harmonic(int m) {
  std::vector<Rat> h(m + 1, Rat(0));
  for (int j = 1; j <= m; ++j) h[j] = h[j - 1] + Rat(1) / j;
  return h;
}

void require_approval(const Election& e) {
  if (!classify(e).approval)
    throw InputError("harmonic scoring needs 0/1 utilities");
  if (e.num_candidates() > 63)
    throw BoundExceeded("harmonic scoring supports at most 63 candidates");
}

struct PavSearch {
  const Election& e;
  Blocks blocks;
  std::vector<Rat> h;
  int m;

  Rat best_score = Rat(-1);
  std::vector<std::vector<int>> best_sets;

  std::vector<int> cur;
  Rat cur_cost = Rat(0);
  Rat cur_score = Rat(0);
  std::vector<long long> cnt; // per block: approved candidates already taken

  Rat marginal(int c) const {
    Rat gain(0);
    uint64_t bit = uint64_t(1) << (c - 1);
    for (size_t b = 0; b < blocks.mask.size(); ++b)
      if (blocks.mask[b] & bit) gain += Rat(blocks.size[b]) / (cnt[b] + 1);
    return gain;
  }

  // Adding any undecided set F gains at most sum over c in F of the current
  // marginal of c, so a fractional knapsack over the leftover budget bounds
  // the subtree. Prune strictly below the incumbent to keep every maximizer.
  Rat upper_bound(int from) const {
    std::vector<std::pair<Rat, Rat>> items; // (marginal, cost)
    for (int c = from; c <= m; ++c) items.emplace_back(marginal(c), e.cost[c]);
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      return a.first * b.second > b.first * a.second;
    });
    Rat bound = cur_score;
    Rat room = Rat(1) - cur_cost;
    for (const auto& [gain, cost] : items) {
      if (cost <= room) {
        bound += gain;
        room -= cost;
      } else {
        bound += gain * room / cost;
        break;
      }
    }
    return bound;
  }

  void record() {
    if (cur_score > best_score) {
      best_score = cur_score;
      best_sets = {cur};
    } else if (cur_score == best_score) {
      best_sets.push_back(cur);
    }
  }

  void dfs(int c) {
    if (c > m) {
      record();
      return;
    }
    if (upper_bound(c) < best_score) return;
    if (e.cost[c] <= Rat(1) - cur_cost) {
      uint64_t bit = uint64_t(1) << (c - 1);
      Rat gain(0);
      for (size_t b = 0; b < blocks.mask.size(); ++b)
        if (blocks.mask[b] & bit) gain += Rat(blocks.size[b]) / (cnt[b] + 1);
      cur.push_back(c);
      cur_cost += e.cost[c];
      cur_score += gain;
      for (size_t b = 0; b < blocks.mask.size(); ++b)
        if (blocks.mask[b] & bit) ++cnt[b];
      dfs(c + 1);
      for (size_t b = 0; b < blocks.mask.size(); ++b)
        if (blocks.mask[b] & bit) --cnt[b];
      cur_score -= gain;
      cur_cost -= e.cost[c];
      cur.pop_back();
    }
    dfs(c + 1);
  }
};

} // namespace

Rat pav_score(const Election& e, const Outcome& w) {
  require_approval(e);
  for (int c : w.ids) e.check_candidate(c);
  Blocks blocks = approval_masks(e);
  std::vector<Rat> h = harmonic(e.num_candidates());
  uint64_t wmask = 0;
  for (int c : w.ids) wmask |= uint64_t(1) << (c - 1);
  Rat score(0);
  for (size_t b = 0; b < blocks.mask.size(); ++b)
    score += Rat(blocks.size[b]) * h[std::popcount(blocks.mask[b] & wmask)];
  return score;
}

std::vector<Outcome> run_pav(const Election& e, int max_candidates) {
  require_approval(e);
  int m = e.num_candidates();
  if (m > max_candidates)
    throw BoundExceeded("harmonic optimum search over " + std::to_string(m) +
                        " candidates exceeds the cap of " + std::to_string(max_candidates));
  PavSearch search{e, approval_masks(e), harmonic(m), m};
  search.cnt.assign(search.blocks.size.size(), 0);
  search.dfs(1);
  std::vector<Outcome> out;
  out.reserve(search.best_sets.size());
  for (auto& ids : search.best_sets) out.push_back(make_outcome(std::move(ids)));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace pbexact
