#pragma once
#include "pbexact/rational.hpp"

#include <optional>
#include <vector>

namespace pbexact {

// Feasibility of {A_eq x = b_eq, A_le x <= b_le, x >= 0} over exact
// rationals: phase-1 simplex with Bland's rule (finite, no cycling).
// Returns one feasible point, or absent when the system is infeasible.
// Rows are dense vectors of length num_vars.
std::optional<std::vector<Rat>> solve_feasibility(const std::vector<std::vector<Rat>>& a_eq,
                                                  const std::vector<Rat>& b_eq,
                                                  const std::vector<std::vector<Rat>>& a_le,
                                                  const std::vector<Rat>& b_le, int num_vars);

} // namespace pbexact
