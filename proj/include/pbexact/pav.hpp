#pragma once
#include "pbexact/election.hpp"

#include <vector>

namespace pbexact {

// Sum over voters of H(|A_i intersect W|), the harmonic proportional score.
// pre: approval instance.
Rat pav_score(const Election& e, const Outcome& w);

// All feasible outcomes of maximal score, sorted; exact branch and bound
// with a fractional-knapsack bound over per-candidate marginals. Ties are
// never pruned. pre: approval instance, m <= max_candidates.
std::vector<Outcome> run_pav(const Election& e, int max_candidates = 24);

} // namespace pbexact
