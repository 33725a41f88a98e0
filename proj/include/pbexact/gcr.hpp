#pragma once
#include "pbexact/election.hpp"
#include "pbexact/ledger.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pbexact {

// One round of the cohesive-group rule: `group` is satisfied by `bundle`
// and withdrawn; beta is the utility level every group member reaches.
struct CohesiveRound {
  Rat beta;
  std::vector<int> group;  // voter ids, ascending
  std::vector<int> bundle; // candidate ids, ascending
};

struct GcrLimits {
  int max_candidates = 20;          // bundle search width cap
  long long node_budget = 10000000; // coin/part pool cap for payment flow
};

struct GcrResult {
  Outcome outcome;
  std::vector<CohesiveRound> rounds;
};

// Best attainable utility level for a fixed bundle: r = ceil(cost(T) * n)
// voters must reach it, so the optimum is the r-th largest u_i(T) over the
// listed voters; the returned group keeps the r voters with the largest
// bundle utility, ties toward lower voter index. Absent when fewer than r
// voters are listed or the level would not be positive.
std::optional<std::pair<Rat, std::vector<int>>> best_beta_for_bundle(
    const std::vector<int>& bundle, const std::vector<int>& voters, const Election& e);

// Rounds maximize beta, then minimize bundle cost, then take the
// lexicographically smallest bundle; stops when no positive level remains.
GcrResult run_gcr(const Election& e, const GcrLimits& limits = {});

// Every outcome reachable when tied rounds (equal beta and equal bundle
// cost) are resolved in all possible ways; tiny instances only.
std::vector<Outcome> run_gcr_all_ties(const Election& e, const GcrLimits& limits = {},
                                      size_t max_paths = 200000);

// Per-round payments financing each bundle from its own group's budgets,
// found by an exact transportation flow over 1/(d*n)-value coins. The
// result funds the outcome with per-voter budget 1/n (conditions C1-C4).
PaymentLedger gcr_payment_construction(const std::vector<CohesiveRound>& rounds,
                                       const Election& e, const GcrLimits& limits = {});

// Resumes equal shares from the financed outcome and the leftover budgets;
// the completed outcome admits the extended payments as a full price system
// with b = 1. pre: ledger funds gcr_out within budgets (C1-C4).
std::pair<Outcome, PaymentLedger> gcr_priceable_completion(const Election& e,
                                                           const Outcome& gcr_out,
                                                           const PaymentLedger& ledger);

} // namespace pbexact
