#pragma once
#include "pbexact/election.hpp"
#include "pbexact/ordinal.hpp"

#include <string>
#include <variant>
#include <vector>

namespace pbexact {

// One externally asserted result the regression suite replays on a fixture.
struct FixtureExpectation {
  std::string operation; // library entry point exercised
  std::string arguments; // extra arguments, empty when the instance suffices
  std::string expected;  // asserted result
  std::string anchor;    // terse tag naming the claim
};

struct Fixture {
  std::string id;
  std::variant<Election, RankedElection> instance;
  std::vector<FixtureExpectation> expectations;
  std::string note;

  bool ranked() const;
  const Election& election() const;              // throws when ranked
  const RankedElection& ranked_election() const; // throws when cardinal
};

// Registered ids, in registry order.
const std::vector<std::string>& fixture_ids();

Fixture load_fixture(const std::string& id);

// Multiplies every identical-utility voter block by factor; block size times
// factor must stay a positive integer, so unit fractions shrink the
// population. Every rule and checker here depends only on the utility
// profile and per-capita shares, hence is invariant under this map.
Election scale_population(const Election& e, const Rat& factor);

} // namespace pbexact
