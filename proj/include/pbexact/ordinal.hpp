#pragma once
#include "pbexact/axioms.hpp"
#include "pbexact/election.hpp"
#include "pbexact/equal_shares.hpp"
#include "pbexact/ledger.hpp"

#include <vector>

namespace pbexact {

// Committee election from strict total orders: k seats, every candidate
// costs 1/k, rankings[i] lists candidate ids best-first.
struct RankedElection {
  int n = 0;
  int m = 0;
  int k = 0;
  std::vector<std::vector<int>> rankings; // [1..n]: permutation of 1..m
  std::vector<std::vector<int>> pos;      // [1..n][1..m]: rank of candidate

  // rank of candidate c in voter i's order, in [1..m]
  int position(int voter, int cand) const { return pos[voter][cand]; }
};

RankedElection make_ranked_election(int n, int m, int k,
                                    std::vector<std::vector<int>> rankings);

// Equal-shares variant where the price scan runs over integer ranks: at
// depth rho a voter supports c iff pos_i(c) <= rho, and c is affordable
// once its supporters' remaining budgets cover 1/k. Payments water-fill
// (equal charge capped by each remaining budget). Trace steps carry the
// rank as rho with RhoKind::Rank.
RuleXResult run_rule_x_lex(const RankedElection& re,
                           TieBreak tie_break = TieBreak::LowestIndex);

// Cardinalizations of a ranked election, costs 1/k.
//   LexExponential: u_i(c) = m^(-pos_i(c)); any single candidate outweighs
//   everything ranked below it.
//   Borda: u_i(c) = (m - pos_i(c)) / (m - 1), scaled into [0,1].
enum class UtilityScheme { LexExponential, Borda };

Election to_cardinal(const RankedElection& re, UtilityScheme scheme);

// Proportionality for solid coalitions: a group unanimous that prefix set T
// beats everything outside deserves min(floor(|S| k / n), |T|) members of T
// elected. Scans the at most n*m rank-prefix sets; witness carries T, S and
// the entitlement. pre: |W| <= k.
AxiomVerdict check_psc(const RankedElection& re, const Outcome& w);

} // namespace pbexact
