#pragma once
#include "pbexact/election.hpp"
#include "pbexact/ledger.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbexact {

// Brute-force search caps. Checks that would have to enumerate past a cap
// report Inconclusive instead of guessing; a violation found inside the
// searched region is still conclusive.
struct SearchBounds {
  int max_bundle_candidates = 12; // cap on m for 2^m bundle enumeration
  int max_group_pool = 12;        // cap on the voter pool for group subsets
};

enum class VerdictStatus { Satisfied, Violated, Inconclusive };

struct ViolationWitness {
  std::vector<int> group;                  // voters S, ascending
  std::vector<int> bundle;                 // candidates T, ascending
  std::vector<std::pair<int, Rat>> floors; // per-candidate level min over S
  std::optional<Rat> beta;                 // common level (weak cohesion)
  std::optional<Rat> threshold;            // floor sum theta
  std::optional<int> candidate;
  std::optional<int> voter;
  std::optional<BigInt> entitlement;       // seats owed to a rank prefix
  std::string condition;                   // violated price condition "C1".."C5"
};

struct AxiomVerdict {
  VerdictStatus status = VerdictStatus::Satisfied;
  std::optional<ViolationWitness> witness;
  std::string note;
};

// 0/1 instances: a group approving all of T, holding at least a cost(T)
// share of the population, must contain someone with |A_i ∩ W| >= |T|.
// Reports the lexicographically first violating bundle with the deprived
// approver group. pre: approval instance.
AxiomVerdict check_ejr_approval(const Election& e, const Outcome& w,
                                const SearchBounds& bounds = SearchBounds{20, 20});

// Cardinal generalization: for S of size exactly ceil(cost(T) * n) the
// guaranteed level is theta = sum over c in T of min_{i in S} u_i(c); a
// violation needs every member below theta even after adding the best
// unelected candidate (drop that allowance with up_to_one = false).
AxiomVerdict check_ejr(const Election& e, const Outcome& w, const SearchBounds& bounds = {},
                       bool up_to_one = true);

// Weak cohesion: some level beta > 0 with enough voters reaching beta on T
// but staying below beta on W. Reports the largest violating beta of the
// lexicographically first violating bundle.
AxiomVerdict check_fjr(const Election& e, const Outcome& w, const SearchBounds& bounds = {});

// Blocking coalition: all strict preferrers of T, enough of them to claim a
// cost(T) share of the budget.
AxiomVerdict check_core(const Election& e, const Outcome& w, const SearchBounds& bounds = {});

// Multiplicative relaxation: a coalition blocks only if even alpha-scaled
// satisfaction (with the best single addition from T) stays short.
// pre: alpha >= 1.
AxiomVerdict check_alpha_core(const Election& e, const Outcome& w, const Rat& alpha,
                              const SearchBounds& bounds = {});

// Violated iff some unelected candidate still fits the leftover budget.
AxiomVerdict check_exhaustive(const Election& e, const Outcome& w);

// Per-voter payments from a common endowment b/n. Valid when payments go
// only to liked winners (C1), fit the endowment (C2), cover each winner
// exactly (C3), avoid losers (C4), and no loser's supporters retain a
// combined surplus above its cost (C5).
struct PriceSystem {
  Rat b = Rat(1);
  std::vector<std::map<int, Rat>> payments; // [1..n]: candidate -> amount
};

PriceSystem price_system_from_ledger(const PaymentLedger& ledger);

// First violated condition in order C1..C5, with the offending voter and/or
// candidate; check_c5 = false verifies pure financing (C1-C4).
AxiomVerdict verify_price_system(const Election& e, const Outcome& w, const PriceSystem& ps,
                                 bool check_c5 = true);

// Exact feasibility search over all price systems for W (payment variables
// per supporter-winner pair plus the endowment b >= 1). Absent = proven
// infeasible. Throws BoundExceeded past max_variables.
std::optional<PriceSystem> find_price_system(const Election& e, const Outcome& w,
                                             int max_variables = 200);

// Rational upper bound of 4 ln(2 umax / umin), where umax is the best
// feasible-bundle utility any voter can reach and umin the least positive
// single utility. Float-assisted with outward rounding; never feeds any
// rule, only acceptance margins.
Rat alpha_core_log_bound(const Election& e, int max_support = 20);

} // namespace pbexact
