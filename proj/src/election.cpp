#include "pbexact/election.hpp"
#include "pbexact/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pbexact {

Rat Election::utility(int voter, int cand) const {
  check_voter(voter);
  check_candidate(cand);
  const auto& row = utils[voter];
  auto it = std::lower_bound(row.begin(), row.end(), cand,
                             [](const auto& entry, int c) { return entry.first < c; });
  if (it != row.end() && it->first == cand) return it->second;
  return Rat(0);
}

int Election::candidate_index(std::string_view candidate_name) const {
  for (int c = 1; c <= num_candidates(); ++c)
    if (name[c] == candidate_name) return c;
  return 0;
}

void Election::check_voter(int voter) const {
  if (voter < 1 || voter > n)
    throw InputError("voter id out of range: " + std::to_string(voter));
}

void Election::check_candidate(int cand) const {
  if (cand < 1 || cand > num_candidates())
    throw InputError("candidate id out of range: " + std::to_string(cand));
}

Election make_election(int n,
                       std::vector<std::pair<std::string, Rat>> candidates,
                       std::vector<std::vector<std::pair<int, Rat>>> utilities) {
  if (n < 1) throw InputError("election needs at least one voter");
  const int m = static_cast<int>(candidates.size());
  Election e;
  e.n = n;
  e.cost.resize(m + 1);
  e.name.resize(m + 1);
  std::set<std::string> seen;
  for (int c = 1; c <= m; ++c) {
    auto& [cname, ccost] = candidates[c - 1];
    if (ccost <= 0 || ccost > 1)
      throw InputError("cost of candidate " + std::to_string(c) +
                       " outside (0,1]: " + format_rat(ccost));
    e.cost[c] = std::move(ccost);
    e.name[c] = cname.empty() ? "c" + std::to_string(c) : std::move(cname);
    if (!seen.insert(e.name[c]).second)
      throw InputError("duplicate candidate name: " + e.name[c]);
  }
  if (static_cast<int>(utilities.size()) != n)
    throw InputError("expected one utility row per voter");
  e.utils.resize(n + 1);
  for (int i = 1; i <= n; ++i) {
    auto& row = utilities[i - 1];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Rat>> cleaned;
    int prev = 0;
    for (auto& [c, u] : row) {
      if (c < 1 || c > m)
        throw InputError("utility entry for unknown candidate " + std::to_string(c));
      if (c == prev)
        throw InputError("duplicate utility entry: voter " + std::to_string(i) +
                         ", candidate " + std::to_string(c));
      prev = c;
      if (u < 0 || u > 1)
        throw InputError("utility outside [0,1]: voter " + std::to_string(i) +
                         ", candidate " + std::to_string(c) + ", value " + format_rat(u));
      if (u > 0) cleaned.emplace_back(c, std::move(u));
    }
    e.utils[i] = std::move(cleaned);
  }
  std::vector<bool> supported(m + 1, false);
  for (int i = 1; i <= n; ++i)
    for (const auto& [c, u] : e.utils[i]) supported[c] = true;
  for (int c = 1; c <= m; ++c)
    if (!supported[c])
      throw InputError("candidate " + e.name[c] + " has no voter with positive utility");
  return e;
}

Election approval_election(int n,
                           std::vector<std::pair<std::string, Rat>> candidates,
                           const std::vector<std::vector<int>>& approval_sets) {
  std::vector<std::vector<std::pair<int, Rat>>> utilities(approval_sets.size());
  for (size_t i = 0; i < approval_sets.size(); ++i)
    for (int c : approval_sets[i]) utilities[i].emplace_back(c, Rat(1));
  return make_election(n, std::move(candidates), std::move(utilities));
}

bool Outcome::contains(int cand) const {
  return std::binary_search(ids.begin(), ids.end(), cand);
}

Outcome make_outcome(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return Outcome{std::move(ids)};
}

Rat total_cost(const Election& e, const std::vector<int>& bundle) {
  Rat sum;
  for (int c : bundle) {
    e.check_candidate(c);
    sum += e.cost[c];
  }
  return sum;
}

Rat total_cost(const Election& e, const Outcome& w) { return total_cost(e, w.ids); }

bool is_feasible(const Election& e, const Outcome& w) { return total_cost(e, w) <= 1; }

Rat group_utility(const Election& e, const std::vector<int>& group,
                  const std::vector<int>& bundle) {
  Rat sum;
  for (int i : group) sum += utility_of(e, i, bundle);
  return sum;
}

Rat utility_of(const Election& e, int voter, const std::vector<int>& bundle) {
  Rat sum;
  for (int c : bundle) sum += e.utility(voter, c);
  return sum;
}

Rat utility_of(const Election& e, int voter, const Outcome& w) {
  return utility_of(e, voter, w.ids);
}

ElectionKind classify(const Election& e) {
  ElectionKind kind;
  const int m = e.num_candidates();
  kind.approval = true;
  for (int i = 1; i <= e.n && kind.approval; ++i)
    for (const auto& [c, u] : e.utils[i])
      if (u != 1) {
        kind.approval = false;
        break;
      }
  if (kind.approval) {
    kind.approval_sets.resize(e.n + 1);
    for (int i = 1; i <= e.n; ++i)
      for (const auto& [c, u] : e.utils[i]) kind.approval_sets[i].push_back(c);
  }
  if (m > 0) {
    bool uniform = true;
    for (int c = 2; c <= m && uniform; ++c)
      if (e.cost[c] != e.cost[1]) uniform = false;
    if (uniform && boost::multiprecision::numerator(e.cost[1]) == 1) {
      kind.unit_cost = true;
      kind.houses = boost::multiprecision::denominator(e.cost[1]);
    }
  }
  return kind;
}

VoterBlocks voter_blocks(const Election& e) {
  VoterBlocks blocks;
  blocks.block_of.assign(e.n + 1, 0);
  std::map<std::vector<std::pair<int, Rat>>, int> index;
  for (int i = 1; i <= e.n; ++i) {
    auto [it, inserted] = index.try_emplace(e.utils[i], blocks.count());
    if (inserted) blocks.members.emplace_back();
    blocks.members[it->second].push_back(i);
    blocks.block_of[i] = it->second;
  }
  return blocks;
}

} // namespace pbexact
