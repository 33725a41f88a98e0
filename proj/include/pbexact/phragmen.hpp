#pragma once
#include "pbexact/election.hpp"
#include "pbexact/equal_shares.hpp"
#include "pbexact/ledger.hpp"

namespace pbexact {

struct PhragmenResult {
  Outcome outcome;
  RuleTrace trace; // rho holds the election clock time
};

// Continuous clock: every voter's virtual balance grows at rate 1/n; a
// candidate fires when its approvers' combined balance reaches its cost,
// which then resets those balances to zero. With skip_unaffordable the
// simulation drops candidates that would overshoot the budget and keeps
// going; otherwise it stops at the first such event. pre: approval instance.
PhragmenResult run_phragmen(const Election& e, TieBreak tb = TieBreak::LowestIndex,
                            bool skip_unaffordable = false);

} // namespace pbexact
