#pragma once

namespace pbexact {

// Entry point behind the pbexact binary. Exit codes: 0 success or axiom
// satisfied, 2 usage or bad input, 3 axiom violated, 4 inconclusive check,
// 5 rule refusal on a search cap, 1 internal failure.
int cli_main(int argc, char** argv);

} // namespace pbexact
