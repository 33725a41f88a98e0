#include "doctest.h"

#include "pbexact/errors.hpp"
#include "pbexact/fixtures.hpp"

#include <set>

using namespace pbexact;

TEST_CASE("the registry lists every packaged instance once") {
  const auto& ids = fixture_ids();
  CHECK(ids == std::vector<std::string>{
                   "onetown", "twotown", "circleville", "pav-ejr-r3", "core-empty-6",
                   "priceable-vs-exhaustive", "rulex-fjr-22", "pav-fjr-6", "laminar-4",
                   "nearly-laminar-4000", "ordinal-psc-3", "ordinal-ejr-2",
                   "ordinal-gcr-12", "phragmen-waste-100"});
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  CHECK_THROWS_AS(load_fixture("no-such-instance"), InputError);
}

TEST_CASE("every fixture carries replayable expectations and a note") {
  for (const auto& id : fixture_ids()) {
    Fixture f = load_fixture(id);
    CHECK(f.id == id);
    CHECK_FALSE(f.note.empty());
    CHECK_FALSE(f.expectations.empty());
    for (const auto& exp : f.expectations) {
      CHECK_FALSE(exp.operation.empty());
      CHECK_FALSE(exp.expected.empty());
      CHECK_FALSE(exp.anchor.empty());
    }
  }
}

TEST_CASE("instance accessors guard the variant") {
  Fixture town = load_fixture("onetown");
  CHECK_FALSE(town.ranked());
  CHECK(town.election().n == 90000);
  CHECK_THROWS_AS(town.ranked_election(), InputError);

  Fixture psc = load_fixture("ordinal-psc-3");
  CHECK(psc.ranked());
  CHECK(psc.ranked_election().k == 2);
  CHECK_THROWS_AS(psc.election(), InputError);
}

TEST_CASE("fixture shapes match their stories") {
  Election onetown = load_fixture("onetown").election();
  CHECK(onetown.n == 90000);
  CHECK(onetown.num_candidates() == 4);
  CHECK(onetown.cost[1] == Rat(2, 9));
  CHECK(onetown.cost[4] == Rat(1, 2));

  Election twotown = load_fixture("twotown").election();
  CHECK(twotown.cost[1] == Rat(1, 3));
  CHECK(twotown.cost[4] == Rat(1, 3));
  for (int i = 1; i <= twotown.n; ++i) CHECK(twotown.utils[i] == onetown.utils[i]);

  Election circle = load_fixture("circleville").election();
  CHECK(circle.n == 400000);
  CHECK(circle.num_candidates() == 20);
  CHECK(total_cost(circle, {1, 2, 3, 4}) == Rat(530000, 400000));
  CHECK(circle.cost[9] == Rat(4000, 400000)); // the cheap district project

  Election near = load_fixture("nearly-laminar-4000").election();
  CHECK(near.n == 4000);
  VoterBlocks nb = voter_blocks(near);
  CHECK(nb.count() == 4);
  CHECK(nb.members[0].size() == 1);
  CHECK(nb.members[1].size() == 2999);
  CHECK(nb.members[2].size() == 999);
  CHECK(nb.members[3].size() == 1);

  RankedElection gcr12 = load_fixture("ordinal-gcr-12").ranked_election();
  CHECK(gcr12.n == 12);
  CHECK(gcr12.m == 12);
  CHECK(gcr12.k == 4);
  CHECK(gcr12.rankings[1] == std::vector<int>{1, 7, 8, 6, 4, 5, 2, 3, 9, 10, 11, 12});

  Election waste = load_fixture("phragmen-waste-100").election();
  CHECK(waste.n == 100);
  CHECK(waste.cost[1] == Rat(1));
  CHECK(waste.cost[2] == Rat(1, 200));
  CHECK(waste.utility(1, 2) == Rat(1));
  CHECK(waste.utility(2, 2) == Rat(0));
}

TEST_CASE("population scaling multiplies whole blocks") {
  Election e = load_fixture("onetown").election();

  Election tiny = scale_population(e, Rat(1, 30000));
  CHECK(tiny.n == 3);
  CHECK(tiny.utils[1] == e.utils[1]);
  CHECK(tiny.utils[3] == e.utils[90000]);

  Election doubled = scale_population(tiny, Rat(2));
  CHECK(doubled.n == 6);
  CHECK(voter_blocks(doubled).members[0].size() == 4);

  CHECK_THROWS_AS(scale_population(e, Rat(1, 7)), InputError);
  CHECK_THROWS_AS(scale_population(e, Rat(0)), InputError);
  CHECK_THROWS_AS(scale_population(e, Rat(-2)), InputError);

  // fractional factors work only when every block divides evenly
  CHECK(scale_population(e, Rat(1, 10000)).n == 9);
  CHECK_THROWS_AS(scale_population(tiny, Rat(3, 2)), InputError); // the R block is odd
}
