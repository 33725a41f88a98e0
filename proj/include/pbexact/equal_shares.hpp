#pragma once
#include "pbexact/election.hpp"
#include "pbexact/ledger.hpp"

#include <optional>
#include <vector>

namespace pbexact {

enum class TieBreak { LowestIndex, MinCostThenIndex };

struct RuleXResult {
  Outcome outcome;
  PaymentLedger ledger;
  RuleTrace trace;
};

// Minimal rho >= 0 with sum_i min(remaining_i, u_i(c) * rho) = cost(c), via
// an exact scan of the piecewise-linear segments between the breakpoints
// remaining_i / u_i(c). Absent exactly when the supporters' combined
// remaining budget is below cost(c).
std::optional<Rat> min_rho(int cand, const PaymentLedger& ledger, const Election& e);

RuleXResult run_rule_x(const Election& e, TieBreak tb = TieBreak::LowestIndex);

// Rule X on the perturbed instance where every zero utility becomes eps.
// Ledger entries charged to voters whose real utility is zero are flagged.
// pre: 0 < eps < min positive utility of e.
RuleXResult run_rule_x_eps(const Election& e, const Rat& eps,
                           TieBreak tb = TieBreak::LowestIndex);

struct ExhaustiveRuleXResult {
  Outcome outcome;
  PaymentLedger ledger;
  RuleTrace trace;
  Rat eps_used;
};

// Limit of the eps-perturbed run: starts at eps0 = (min positive utility) /
// (n * m * lcm of cost denominators) and halves until two consecutive runs
// elect the same candidate sequence; returns the run at the first eps of the
// stabilized pair. Instances without zero utilities short-circuit to the
// plain run. No stabilization within max_halvings throws BoundExceeded
// carrying both divergent sequences.
ExhaustiveRuleXResult run_rule_x_exhaustive(const Election& e,
                                            TieBreak tb = TieBreak::LowestIndex,
                                            int max_halvings = 64);

// Resumes the election loop from an already-elected outcome and the budgets
// left in `ledger`; payments accumulate into the same ledger.
RuleXResult resume_rule_x(const Election& e, const Outcome& start, PaymentLedger ledger,
                          TieBreak tb = TieBreak::LowestIndex);

// Every outcome reachable under some resolution of rho ties, deduplicated
// and sorted. Visiting more than max_states intermediate states throws
// BoundExceeded; meant for tiny instances.
std::vector<Outcome> run_rule_x_all_ties(const Election& e, size_t max_states = 20000);

} // namespace pbexact
