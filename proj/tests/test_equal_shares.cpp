#include "doctest.h"

#include "pbexact/election.hpp"
#include "pbexact/equal_shares.hpp"
#include "pbexact/errors.hpp"
#include "pbexact/fixtures.hpp"

#include <algorithm>

using namespace pbexact;

namespace {

Election town(const std::string& id, const Rat& factor) {
  return scale_population(load_fixture(id).election(), factor);
}

std::vector<Rat> rho_sequence(const RuleXResult& r) {
  std::vector<Rat> rhos;
  for (const auto& step : r.trace.steps) rhos.push_back(step.rho);
  return rhos;
}

} // namespace

TEST_CASE("min_rho solves the capped supporter equation exactly") {
  Election e = make_election(
      2, {{"a", Rat(3, 4)}, {"b", Rat(1, 4)}, {"d", Rat(1)}},
      {{{1, Rat(1)}, {2, Rat(1)}}, {{1, Rat(1, 2)}, {2, Rat(1, 2)}, {3, Rat(1)}}});
  PaymentLedger ledger = PaymentLedger::fresh(e); // 1/2 each

  // f(rho) = min(1/2, rho) + min(1/2, rho/2): candidate a caps voter 1
  auto rho_a = min_rho(1, ledger, e);
  REQUIRE(rho_a.has_value());
  CHECK(*rho_a == Rat(1, 2));
  CHECK(Rat(1, 2) + *rho_a / 2 == e.cost[1]); // voter 1 capped, voter 2 linear

  auto rho_b = min_rho(2, ledger, e);
  REQUIRE(rho_b.has_value());
  CHECK(*rho_b == Rat(1, 6)); // no caps: rho * 3/2 = 1/4

  // d is supported only by voter 2 whose budget cannot cover cost 1
  CHECK_FALSE(min_rho(3, ledger, e).has_value());

  ledger.charge(1, 2, Rat(1, 4));
  auto rho_a2 = min_rho(1, ledger, e);
  REQUIRE(rho_a2.has_value());
  CHECK(*rho_a2 == Rat(1)); // both voters must cap: 1/4 + 1/2 = 3/4
}

TEST_CASE("equal shares elects the unanimous projects in onetown") {
  Election full = load_fixture("onetown").election();
  RuleXResult r = run_rule_x(full);
  CHECK(r.outcome == make_outcome({1, 2, 3}));
  CHECK(r.trace.steps[0].rho == Rat(1, 270000));

  Election small = town("onetown", Rat(1, 30000)); // 2 L-voters + 1 R-voter
  RuleXResult s = run_rule_x(small);
  CHECK(s.outcome == make_outcome({1, 2, 3}));
  CHECK(rho_sequence(s) == std::vector<Rat>{Rat(1, 9), Rat(1, 9), Rat(1, 9)});
  CHECK(s.trace.steps[0].tie_set == std::vector<int>{1, 2, 3});
  for (int c : {1, 2, 3}) {
    CHECK(s.ledger.payment(1, c) == Rat(1, 9));
    CHECK(s.ledger.payment(2, c) == Rat(1, 9));
    CHECK(s.ledger.payment(3, c) == Rat(0));
  }
  CHECK(s.ledger.remaining[3] == Rat(1, 3)); // the R voter never pays
}

TEST_CASE("equal shares splits across camps in twotown") {
  Election small = town("twotown", Rat(1, 30000));
  RuleXResult r = run_rule_x(small);
  CHECK(r.outcome == make_outcome({1, 2, 4}));
  CHECK(rho_sequence(r) == std::vector<Rat>{Rat(1, 6), Rat(1, 6), Rat(1, 3)});
  CHECK(r.ledger.payment(3, 4) == Rat(1, 3));
  CHECK(r.ledger.remaining[1] == Rat(0));
  CHECK(r.ledger.remaining[3] == Rat(0));

  CHECK(run_rule_x(load_fixture("twotown").election()).outcome == make_outcome({1, 2, 4}));
}

TEST_CASE("equal shares fills the laminar instance to the full budget") {
  Election e = load_fixture("laminar-4").election();
  RuleXResult r = run_rule_x(e);
  CHECK(r.outcome == make_outcome({1, 2, 3, 4, 5, 6, 7, 11}));
  const std::vector<Rat> want{Rat(1, 32), Rat(1, 32), Rat(1, 32), Rat(1, 32),
                              Rat(1, 24), Rat(1, 24), Rat(1, 24), Rat(1, 8)};
  CHECK(rho_sequence(r) == want);
  CHECK(total_cost(e, r.outcome) == Rat(1));
}

TEST_CASE("tie-breaks pick the first elected candidate") {
  // a and b tie at rho = 1/2 with different costs
  Election e = make_election(
      1, {{"a", Rat(1, 2)}, {"b", Rat(1, 4)}},
      {{{1, Rat(1)}, {2, Rat(1, 2)}}});
  RuleXResult lo = run_rule_x(e, TieBreak::LowestIndex);
  RuleXResult mc = run_rule_x(e, TieBreak::MinCostThenIndex);
  CHECK(lo.outcome == make_outcome({1, 2}));
  CHECK(mc.outcome == make_outcome({1, 2}));
  CHECK(lo.trace.steps[0].candidate == 1);
  CHECK(mc.trace.steps[0].candidate == 2);
  CHECK(lo.trace.steps[0].tie_set == std::vector<int>{1, 2});
  CHECK(mc.trace.steps[0].tie_set == std::vector<int>{1, 2});
}

TEST_CASE("all-ties enumeration covers every resolution") {
  Election small = town("twotown", Rat(1, 30000));
  std::vector<Outcome> all = run_rule_x_all_ties(small);
  CHECK(all == std::vector<Outcome>{make_outcome({1, 2, 4}), make_outcome({1, 3, 4}),
                                    make_outcome({2, 3, 4})});

  Election pe = load_fixture("priceable-vs-exhaustive").election();
  CHECK(run_rule_x_all_ties(pe) ==
        std::vector<Outcome>{make_outcome({2}), make_outcome({3})});

  CHECK_THROWS_AS(run_rule_x_all_ties(small, 1), BoundExceeded);
}

TEST_CASE("the plain run can strand budget that a perturbed run spends") {
  Election e = load_fixture("priceable-vs-exhaustive").election();
  RuleXResult plain = run_rule_x(e);
  CHECK(plain.outcome == make_outcome({2}));
  CHECK(plain.trace.steps[0].rho == Rat(1, 3));
  CHECK(plain.trace.steps[0].tie_set == std::vector<int>{2, 3});
  CHECK(plain.ledger.payment(3, 2) == Rat(1, 3));
  CHECK(plain.ledger.remaining[1] == Rat(1, 3)); // stranded

  ExhaustiveRuleXResult ex = run_rule_x_exhaustive(e);
  CHECK(ex.outcome == make_outcome({2, 3}));
  CHECK(ex.eps_used == Rat(1, 27)); // min utility / (n m lcm-of-cost-denominators)
  CHECK(ex.ledger.synthetic ==
        std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}});
  CHECK(ex.trace.steps[0].candidate == 2);
  CHECK(ex.trace.steps[0].rho == Rat(9, 29));
  CHECK(ex.ledger.payment(3, 2) == Rat(9, 29));
  CHECK(ex.ledger.payment(1, 2) == Rat(1, 87));
  CHECK(ex.trace.steps[1].candidate == 3);
  CHECK(ex.trace.steps[1].rho == Rat(243, 58));
  CHECK(ex.ledger.payment(3, 3) == Rat(2, 87)); // capped by the leftover budget
  CHECK(ex.ledger.payment(1, 3) == Rat(9, 58));
}

TEST_CASE("eps runs validate eps and mark synthetic charges") {
  Election e = load_fixture("priceable-vs-exhaustive").election();
  CHECK_THROWS_AS(run_rule_x_eps(e, Rat(0)), InputError);
  CHECK_THROWS_AS(run_rule_x_eps(e, Rat(1)), InputError);
  CHECK_THROWS_AS(run_rule_x_eps(e, Rat(-1, 27)), InputError);

  RuleXResult r = run_rule_x_eps(e, Rat(1, 27));
  CHECK(r.outcome == make_outcome({2, 3}));
  for (auto [voter, cand] : r.ledger.synthetic)
    CHECK(e.utility(voter, cand) == Rat(0));
}

TEST_CASE("instances without zero utilities short-circuit the eps cascade") {
  Election e = approval_election(
      2, {{"a", Rat(1, 2)}, {"b", Rat(1, 2)}}, {{1, 2}, {1, 2}});
  ExhaustiveRuleXResult ex = run_rule_x_exhaustive(e);
  CHECK(ex.outcome == make_outcome({1, 2}));
  CHECK(ex.eps_used == Rat(1, 8)); // eps0 reported even though no run was perturbed
  CHECK(ex.ledger.synthetic.empty());

  RuleXResult plain = run_rule_x(e);
  CHECK(plain.outcome == ex.outcome);
  CHECK(plain.ledger.paid == ex.ledger.paid);
}

TEST_CASE("resume continues a run from an intermediate state") {
  Election e = town("twotown", Rat(1, 30000));
  RuleXResult full = run_rule_x(e);

  RuleXResult fresh = resume_rule_x(e, Outcome{}, PaymentLedger::fresh(e));
  CHECK(fresh.outcome == full.outcome);
  CHECK(fresh.ledger.paid == full.ledger.paid);

  RuleXResult stuck = resume_rule_x(e, full.outcome, full.ledger);
  CHECK(stuck.outcome == full.outcome);
  CHECK(stuck.trace.steps.empty());

  // resuming after the first elected candidate replays the tail
  PaymentLedger mid = PaymentLedger::fresh(e);
  mid.charge(1, 1, Rat(1, 6));
  mid.charge(2, 1, Rat(1, 6));
  RuleXResult tail = resume_rule_x(e, make_outcome({1}), mid);
  CHECK(tail.outcome == full.outcome);
  CHECK(tail.trace.steps.size() == 2);
  CHECK(tail.trace.steps[0].candidate == 2);
}

TEST_CASE("rho never decreases along a run") {
  for (const char* id : {"onetown", "twotown", "laminar-4", "rulex-fjr-22"}) {
    RuleXResult r = run_rule_x(load_fixture(id).election());
    for (size_t s = 1; s < r.trace.steps.size(); ++s)
      CHECK(r.trace.steps[s - 1].rho <= r.trace.steps[s].rho);
  }
}
