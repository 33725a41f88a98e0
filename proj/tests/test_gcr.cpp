#include "doctest.h"

#include "pbexact/axioms.hpp"
#include "pbexact/errors.hpp"
#include "pbexact/fixtures.hpp"
#include "pbexact/gcr.hpp"
#include "pbexact/ordinal.hpp"

#include <algorithm>

using namespace pbexact;

TEST_CASE("best_beta_for_bundle takes the r-th largest bundle utility") {
  Election e = load_fixture("priceable-vs-exhaustive").election();

  auto one = best_beta_for_bundle({2}, {1, 2, 3}, e);
  REQUIRE(one.has_value());
  CHECK(one->first == Rat(1)); // r = ceil(1/3 * 3) = 1, voter 3 tops
  CHECK(one->second == std::vector<int>{3});

  // r = 3 but only voter 3 has positive utility for {2, 3}
  CHECK_FALSE(best_beta_for_bundle({2, 3}, {1, 2, 3}, e).has_value());
  // fewer voters listed than r
  CHECK_FALSE(best_beta_for_bundle({1}, {1, 2}, e).has_value());

  Election app = approval_election(
      3, {{"a", Rat(2, 3)}}, {{1}, {1}, {1}});
  auto tie = best_beta_for_bundle({1}, {1, 2, 3}, app);
  REQUIRE(tie.has_value());
  CHECK(tie->first == Rat(1));
  CHECK(tie->second == std::vector<int>{1, 2}); // equal utilities keep low ids
}

TEST_CASE("gcr rounds on the laminar instance") {
  Election e = load_fixture("laminar-4").election();
  GcrResult r = run_gcr(e);
  REQUIRE(r.rounds.size() == 2);
  CHECK(r.rounds[0].beta == Rat(6));
  CHECK(r.rounds[0].bundle == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(r.rounds[0].group == std::vector<int>{1, 2, 3});
  CHECK(r.rounds[1].beta == Rat(2));
  CHECK(r.rounds[1].bundle == std::vector<int>{11, 12});
  CHECK(r.rounds[1].group == std::vector<int>{4});
  CHECK(r.outcome == make_outcome({1, 2, 3, 4, 5, 6, 11, 12}));
}

TEST_CASE("gcr tie resolutions reach both laminar splits") {
  Election e = load_fixture("laminar-4").election();
  std::vector<Outcome> all = run_gcr_all_ties(e);
  auto has = [&](std::vector<int> ids) {
    return std::find(all.begin(), all.end(), make_outcome(std::move(ids))) != all.end();
  };
  CHECK(has({1, 2, 3, 4, 5, 6, 11, 12}));
  CHECK(has({5, 6, 7, 8, 9, 10, 11, 12}));
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("gcr search width and flow pool caps are enforced") {
  Election e = load_fixture("laminar-4").election();
  CHECK_THROWS_AS(run_gcr(e, GcrLimits{5, 10000000}), BoundExceeded);

  GcrResult r = run_gcr(e);
  CHECK_THROWS_AS(gcr_payment_construction(r.rounds, e, GcrLimits{20, 1}),
                  BoundExceeded);
}

TEST_CASE("gcr payments finance each round from its own group") {
  Election e = load_fixture("laminar-4").election();
  GcrResult r = run_gcr(e);
  PaymentLedger ledger = gcr_payment_construction(r.rounds, e);

  for (const CohesiveRound& round : r.rounds) {
    Rat covered;
    for (int c : round.bundle) {
      Rat price;
      for (int i = 1; i <= e.n; ++i) price += ledger.payment(i, c);
      CHECK(price == e.cost[c]);
      for (int i = 1; i <= e.n; ++i)
        if (ledger.payment(i, c) > 0)
          CHECK(std::binary_search(round.group.begin(), round.group.end(), i));
      covered += price;
    }
    CHECK(covered == total_cost(e, round.bundle));
  }

  AxiomVerdict financing = verify_price_system(
      e, r.outcome, price_system_from_ledger(ledger), /*check_c5=*/false);
  CHECK(financing.status == VerdictStatus::Satisfied);
}

TEST_CASE("gcr completion extends the financed outcome to a priceable one") {
  Election e = load_fixture("priceable-vs-exhaustive").election();
  GcrResult r = run_gcr(e);
  REQUIRE(r.rounds.size() == 1);
  CHECK(r.outcome == make_outcome({2}));
  CHECK(r.rounds[0].beta == Rat(1));
  CHECK(r.rounds[0].group == std::vector<int>{3});

  PaymentLedger ledger = gcr_payment_construction(r.rounds, e);
  CHECK(ledger.payment(3, 2) == Rat(1, 3));

  auto [completed, full] = gcr_priceable_completion(e, r.outcome, ledger);
  CHECK(completed == make_outcome({2})); // nothing else is affordable
  AxiomVerdict v = verify_price_system(e, completed, price_system_from_ledger(full));
  CHECK(v.status == VerdictStatus::Satisfied);
}

TEST_CASE("gcr led by big blocks on the near-laminar population") {
  Election e = load_fixture("nearly-laminar-4000").election();
  GcrResult r = run_gcr(e);
  REQUIRE(r.rounds.size() == 2);
  CHECK(r.rounds[0].beta == Rat(6));
  CHECK(r.rounds[0].bundle == std::vector<int>{5, 6, 7, 8, 9, 10});
  CHECK(r.rounds[0].group.size() == 3000);
  CHECK(r.rounds[0].group.front() == 1);
  CHECK(r.rounds[0].group.back() == 3000);
  CHECK(r.rounds[1].beta == Rat(2));
  CHECK(r.rounds[1].bundle == std::vector<int>{11, 12});
  CHECK(r.rounds[1].group.size() == 1000);
  CHECK(r.outcome == make_outcome({5, 6, 7, 8, 9, 10, 11, 12}));

  PaymentLedger ledger = gcr_payment_construction(r.rounds, e);
  for (const CohesiveRound& round : r.rounds)
    for (int i : round.group) {
      CHECK(ledger.paid_total(i) == ledger.share); // exact population: full shares
      CHECK(ledger.remaining[i] == Rat(0));
    }
}

TEST_CASE("gcr on the exponential cardinalization of ranked ballots") {
  RankedElection re = load_fixture("ordinal-gcr-12").ranked_election();
  Election e = to_cardinal(re, UtilityScheme::LexExponential);
  GcrResult r = run_gcr(e);
  const Rat p1 = Rat(1, 12), p4 = Rat(1, 20736), p5 = Rat(1, 248832);
  REQUIRE(r.rounds.size() == 2);
  CHECK(r.rounds[0].bundle == std::vector<int>{1, 6});
  CHECK(r.rounds[0].beta == p1 + p4);
  CHECK(r.rounds[0].group == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(r.rounds[1].bundle == std::vector<int>{7, 8});
  CHECK(r.rounds[1].beta == p4 + p5);
  CHECK(r.rounds[1].group == std::vector<int>{7, 8, 9, 10, 11, 12});
  CHECK(r.outcome == make_outcome({1, 6, 7, 8}));
}
