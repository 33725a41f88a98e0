#pragma once
#include "pbexact/election.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace pbexact {

// Per-voter payments and remaining budgets for one rule run. With endowment
// b/n it doubles as a priceability certificate.
struct PaymentLedger {
  int n = 0;
  Rat share;                            // initial endowment per voter, b/n
  std::vector<std::map<int, Rat>> paid; // [1..n]: candidate -> positive payment
  std::vector<Rat> remaining;           // [1..n]
  // entries charged to voters whose real utility for the candidate is zero;
  // only eps-perturbed runs create them
  std::set<std::pair<int, int>> synthetic;

  static PaymentLedger fresh(const Election& e, const Rat& b = Rat(1));

  // amount must not exceed the voter's remaining budget; zero amounts are
  // dropped silently
  void charge(int voter, int cand, const Rat& amount, bool synthetic_entry = false);

  Rat payment(int voter, int cand) const; // 0 when absent
  Rat paid_total(int voter) const;
};

struct TraceStep {
  enum class RhoKind { PricePerUtility, Rank, Time };

  int candidate = 0;
  Rat rho;       // price per utility; integer rank for lex runs; clock time for phragmen
  RhoKind rho_kind = RhoKind::PricePerUtility;
  std::vector<int> tie_set;                  // candidates tied at this rho
  std::vector<std::pair<int, Rat>> payments; // positive only, voter-ascending
};

struct RuleTrace {
  std::vector<TraceStep> steps;
};

} // namespace pbexact
