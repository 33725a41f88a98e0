#pragma once
#include "pbexact/rational.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pbexact {

// Voters and candidates carry dense 1-based ids. The budget is normalized to
// 1 at ingestion, so every cost lies in (0,1]. Utilities lie in (0,1]; zero
// utilities are never stored (absent = 0). Immutable after construction.
struct Election {
  int n = 0;
  std::vector<Rat> cost;         // [1..m], slot 0 unused
  std::vector<std::string> name; // [1..m], slot 0 unused
  // utils[i]: voter i's positive utilities, sorted by candidate id
  std::vector<std::vector<std::pair<int, Rat>>> utils; // [1..n], slot 0 unused

  int num_candidates() const { return static_cast<int>(cost.size()) - 1; }
  Rat utility(int voter, int cand) const; // 0 when absent
  const std::string& candidate_name(int cand) const { return name[cand]; }
  int candidate_index(std::string_view candidate_name) const; // 0 if unknown

  void check_voter(int voter) const;
  void check_candidate(int cand) const;
};

// Validates all model invariants (costs in (0,1], utilities in [0,1], every
// candidate has a supporter). Zero utility entries are dropped. Empty
// candidate names default to "c<index>"; names must be unique.
Election make_election(int n,
                       std::vector<std::pair<std::string, Rat>> candidates,
                       std::vector<std::vector<std::pair<int, Rat>>> utilities);

// Convenience constructor for 0/1 utilities.
Election approval_election(int n,
                           std::vector<std::pair<std::string, Rat>> candidates,
                           const std::vector<std::vector<int>>& approval_sets);

struct Outcome {
  std::vector<int> ids; // sorted, unique

  bool contains(int cand) const;
  int size() const { return static_cast<int>(ids.size()); }
  bool operator==(const Outcome& other) const = default;
  bool operator<(const Outcome& other) const { return ids < other.ids; }
};

Outcome make_outcome(std::vector<int> ids); // sorts and dedupes

Rat total_cost(const Election& e, const std::vector<int>& bundle);
Rat total_cost(const Election& e, const Outcome& w);
bool is_feasible(const Election& e, const Outcome& w);

// Sum over voters in the group of their total utility for the bundle.
Rat group_utility(const Election& e, const std::vector<int>& group,
                  const std::vector<int>& bundle);

// u_i(W): one voter's additive utility for a candidate set.
Rat utility_of(const Election& e, int voter, const std::vector<int>& bundle);
Rat utility_of(const Election& e, int voter, const Outcome& w);

struct ElectionKind {
  bool approval = false;
  bool unit_cost = false;
  BigInt houses = 0;                            // k, set when unit_cost
  std::vector<std::vector<int>> approval_sets;  // [1..n], set when approval
};

ElectionKind classify(const Election& e);

// Groups voters with identical utility rows. Members are index-sorted and
// blocks are ordered by their smallest member; identical rows are
// exchangeable in every rule and checker of this library.
struct VoterBlocks {
  std::vector<std::vector<int>> members;
  std::vector<int> block_of; // [1..n]
  int count() const { return static_cast<int>(members.size()); }
};

VoterBlocks voter_blocks(const Election& e);

} // namespace pbexact
