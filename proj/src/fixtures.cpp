#include "pbexact/fixtures.hpp"

#include "pbexact/errors.hpp"

#include <utility>

namespace pbexact {

bool Fixture::ranked() const {
  return std::holds_alternative<RankedElection>(instance);
}

const Election& Fixture::election() const {
  if (ranked()) throw InputError("fixture " + id + " holds ranked ballots");
  return std::get<Election>(instance);
}

const RankedElection& Fixture::ranked_election() const {
  if (!ranked()) throw InputError("fixture " + id + " holds cardinal ballots");
  return std::get<RankedElection>(instance);
}

namespace {

using Cands = std::vector<std::pair<std::string, Rat>>;

std::vector<std::vector<int>> approval_blocks(
    const std::vector<std::pair<int, std::vector<int>>>& blocks) {
  std::vector<std::vector<int>> sets;
  for (const auto& [copies, approved] : blocks)
    sets.insert(sets.end(), copies, approved);
  return sets;
}

Cands uniform_candidates(int m, const Rat& cost) {
  Cands candidates(m);
  for (auto& [name, c] : candidates) c = cost;
  return candidates;
}

Fixture onetown() {
  Fixture f;
  f.id = "onetown";
  f.instance = approval_election(
      90000,
      {{"L1", rat(2, 9)}, {"L2", rat(2, 9)}, {"L3", rat(2, 9)}, {"R", rat(1, 2)}},
      approval_blocks({{60000, {1, 2, 3}}, {30000, {4}}}));
  f.note = "90000 voters, budget 90000: three 20000 projects for the 60000 "
           "Leftside voters against one 45000 project for the 30000 Rightside";
  f.expectations = {
      {"run_pav", "", "{L1, L2, R}", "welfare drops an L project"},
      {"run_rule_x", "", "{L1, L2, L3}", "equal shares buys all L"},
      {"run_phragmen", "", "{L1, L2, L3}", "R fires too late"},
      {"check_ejr_approval", "W = {L1, L2, R}", "violated, T = {L1, L2, L3}",
       "Leftside underrepresented"},
  };
  return f;
}

Fixture twotown() {
  Fixture f;
  f.id = "twotown";
  f.instance = approval_election(
      90000,
      {{"L1", rat(1, 3)}, {"L2", rat(1, 3)}, {"L3", rat(1, 3)}, {"R", rat(1, 3)}},
      approval_blocks({{60000, {1, 2, 3}}, {30000, {4}}}));
  f.note = "same ballots as onetown but every project costs 30000, so a "
           "two-thirds majority deserves two of three seats";
  f.expectations = {
      {"run_pav", "", "{L1, L2, R} up to L relabeling", "same winners as onetown"},
      {"run_rule_x", "", "{L1, L2, R}", "proportional at equal costs"},
      {"run_phragmen", "", "{L1, L2, R}", "proportional at equal costs"},
  };
  return f;
}

Fixture circleville() {
  Fixture f;
  f.id = "circleville";
  const Rat b(400000);
  f.instance = approval_election(
      400000,
      {{"A", Rat(50000) / b},
       {"B", Rat(30000) / b},
       {"C", Rat(150000) / b},
       {"D", Rat(300000) / b},
       {"E", Rat(60000) / b},
       {"F", Rat(10000) / b},
       {"G", Rat(90000) / b},
       {"H", Rat(60000) / b},
       {"I", Rat(4000) / b},
       {"J", Rat(70000) / b},
       {"K", Rat(20000) / b},
       {"L", Rat(30000) / b},
       {"M", Rat(20000) / b},
       {"N", Rat(40000) / b},
       {"O", Rat(100000) / b},
       {"P", Rat(30000) / b},
       {"Q", Rat(80000) / b},
       {"R", Rat(10000) / b},
       {"S", Rat(40000) / b},
       {"T", Rat(7000) / b}},
      approval_blocks({{120000, {1, 2, 3, 4}},
                       {110000, {5, 6, 7, 8, 9}},
                       {80000, {10, 11, 12, 13, 14, 15}},
                       {90000, {16, 17, 18, 19, 20}}}));
  f.note = "four districts of 120000/110000/80000/90000 voters, each voting "
           "only for its own projects; smoke and scaling tests only";
  f.expectations = {
      {"run_rule_x", "", "a feasible outcome whose trace re-verifies",
       "district-local spending"},
  };
  return f;
}

Fixture pav_ejr_r3() {
  Fixture f;
  f.id = "pav-ejr-r3";
  f.instance = approval_election(
      9,
      {{"a1", rat(1, 3)}, {"a2", rat(1, 3)}, {"a3", rat(1, 3)},
       {"b1", rat(1, 27)}, {"b2", rat(1, 27)}, {"b3", rat(1, 27)}},
      approval_blocks({{8, {1, 2, 3}}, {1, {4, 5, 6}}}));
  f.note = "r = 3: eight voters want the expensive triple, the ninth could be "
           "served at cost 1/27 but harmonic scoring ignores it";
  f.expectations = {
      {"run_pav", "", "{a1, a2, a3}", "welfare serves the eight"},
      {"check_ejr_approval", "W = {a1, a2, a3}", "violated, T = {b1}",
       "ninth voter left empty"},
  };
  return f;
}

Fixture core_empty_6() {
  Fixture f;
  f.id = "core-empty-6";
  std::vector<std::vector<std::pair<int, Rat>>> utilities = {
      {{1, Rat(1)}, {2, rat(1, 2)}}, {{2, Rat(1)}, {3, rat(1, 2)}},
      {{3, Rat(1)}, {1, rat(1, 2)}}, {{4, Rat(1)}, {5, rat(1, 2)}},
      {{5, Rat(1)}, {6, rat(1, 2)}}, {{6, Rat(1)}, {4, rat(1, 2)}},
  };
  f.instance = make_election(6, uniform_candidates(6, rat(1, 3)), std::move(utilities));
  f.note = "two disjoint three-cycles of utilities at unit cost 1/3; every "
           "feasible outcome is blocked by some coalition";
  f.expectations = {
      {"check_core", "every feasible W", "violated", "no core outcome exists"},
      {"check_core", "W = {c1, c4, c5}", "violated, S = {v2, v3}, T = {c3}",
       "canonical blocking pair"},
  };
  return f;
}

Fixture priceable_vs_exhaustive() {
  Fixture f;
  f.id = "priceable-vs-exhaustive";
  f.instance = approval_election(
      3, {{"c1", Rat(1)}, {"c2", rat(1, 3)}, {"c3", rat(1, 3)}},
      {{1}, {1}, {3, 2}});
  f.note = "both exhaustive outcomes fail priceability, so priceable rules "
           "must leave money unspent here";
  f.expectations = {
      {"run_rule_x", "", "{c2}", "stops short of exhaustive"},
      {"run_rule_x_exhaustive", "", "{c2, c3}", "perturbed run completes"},
      {"find_price_system", "W = {c1}", "infeasible", "neither outcome priceable"},
      {"find_price_system", "W = {c2, c3}", "infeasible", "neither outcome priceable"},
  };
  return f;
}

Fixture rulex_fjr_22() {
  Fixture f;
  f.id = "rulex-fjr-22";
  f.instance = approval_election(
      22, uniform_candidates(13, rat(1, 11)),
      approval_blocks({{3, {1, 2, 3, 4, 8}},
                       {3, {1, 2, 3, 4, 9}},
                       {3, {1, 2, 3, 4, 10}},
                       {3, {1, 2, 3, 4, 11}},
                       {3, {1, 2, 3, 4, 12}},
                       {3, {5, 6, 7, 8, 9, 10, 11, 12}},
                       {3, {5, 6, 7}},
                       {1, {13}}}));
  f.note = "n = 22, m = 13, k = 11: equal shares elects c1..c7 yet eighteen "
           "voters jointly afford nine candidates worth five each";
  f.expectations = {
      {"run_rule_x", "", "{c1, ..., c7}; rho = 1/165 then 1/66",
       "price jumps after four"},
      {"check_fjr", "W = {c1, ..., c7}", "violated, beta = 5",
       "weakly cohesive eighteen"},
  };
  return f;
}

Fixture pav_fjr_6() {
  Fixture f;
  f.id = "pav-fjr-6";
  f.instance = approval_election(
      6, uniform_candidates(15, rat(1, 12)),
      {{1, 2, 3, 4},
       {1, 2, 3, 5},
       {1, 2, 3, 6},
       {7, 8, 9},
       {10, 11, 12},
       {13, 14, 15}});
  f.note = "n = 6, m = 15, k = 12: harmonic scoring spreads seats thin while "
           "half the voters could afford six candidates worth four each";
  f.expectations = {
      {"run_pav", "", "{c1, c2, c3, c7, ..., c15}", "score 11 committee"},
      {"check_fjr", "W = PAV outcome", "violated, beta = 4",
       "first three voters short"},
  };
  return f;
}

Fixture laminar_4() {
  Fixture f;
  f.id = "laminar-4";
  f.instance = approval_election(
      4, uniform_candidates(12, rat(1, 8)),
      {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
       {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
       {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
       {1, 2, 3, 4, 11, 12}});
  f.note = "laminar ballots X shared, Y for three voters, Z for one; greedy "
           "cohesion skips X while equal shares splits it proportionally";
  f.expectations = {
      {"run_rule_x", "", "{c1, ..., c7, c11}", "laminar proportional split"},
      {"run_gcr", "", "{c1, ..., c6, c11, c12}", "greedy serves blocks whole"},
      {"run_gcr_all_ties", "", "contains Y + Z = {c5, ..., c12}",
       "tied bundles branch"},
  };
  return f;
}

Fixture nearly_laminar_4000() {
  Fixture f;
  f.id = "nearly-laminar-4000";
  f.instance = approval_election(
      4000, uniform_candidates(12, rat(1, 8)),
      approval_blocks({{1, {5, 6, 7, 8, 9, 10}},
                       {2999, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
                       {999, {1, 2, 3, 4, 11, 12}},
                       {1, {11, 12}}}));
  f.note = "perturbing one voter per side pins the greedy rounds: 3000 voters "
           "take Y whole, the remaining 1000 take Z";
  f.expectations = {
      {"run_gcr", "", "Y + Z = {c5, ..., c12} in under a minute",
       "pruned search stays fast"},
  };
  return f;
}

Fixture ordinal_psc_3() {
  Fixture f;
  f.id = "ordinal-psc-3";
  f.instance = make_ranked_election(3, 4, 2,
                                    {{1, 2, 3, 4}, {2, 3, 1, 4}, {3, 1, 2, 4}});
  f.note = "cyclic top-three rankings, two seats: all three voters solidly "
           "back {c1, c2, c3} and deserve two of them";
  f.expectations = {
      {"run_rule_x_lex", "", "{c1, c2}; ranks 2 then 3", "integer price scan"},
      {"check_psc", "W = {c1, c4}", "violated, T = {c1, c2, c3}, owed 2",
       "solid cycle shortchanged"},
      {"check_fjr", "lex-exponential, W = {c1, c4}", "satisfied",
       "cohesion misses the cycle"},
  };
  return f;
}

Fixture ordinal_ejr_2() {
  Fixture f;
  f.id = "ordinal-ejr-2";
  f.instance = make_ranked_election(2, 4, 2, {{1, 3, 4, 2}, {2, 3, 4, 1}});
  f.note = "two opposed voters, two seats: prefixes force {c1, c2}, while "
           "strict cohesion on exponential utilities would demand c3";
  f.expectations = {
      {"run_rule_x_lex", "", "{c1, c2}", "each voter buys a top"},
      {"check_psc", "W = {c3, c4}", "violated, T = {c1}", "top choice owed"},
      {"check_ejr", "lex-exponential, W = {c3, c4}, strict", "violated",
       "compromise beats both tops"},
      {"check_ejr", "lex-exponential, W = {c3, c4}, up to one", "satisfied",
       "one-candidate allowance saves it"},
  };
  return f;
}

Fixture ordinal_gcr_12() {
  Fixture f;
  f.id = "ordinal-gcr-12";
  f.instance = make_ranked_election(
      12, 12, 4,
      {{1, 7, 8, 6, 4, 5, 2, 3, 9, 10, 11, 12},
       {1, 7, 8, 6, 4, 5, 2, 3, 9, 10, 11, 12},
       {1, 2, 3, 6, 4, 5, 7, 8, 9, 10, 11, 12},
       {1, 2, 3, 6, 4, 5, 7, 8, 9, 10, 11, 12},
       {1, 2, 3, 6, 4, 5, 7, 8, 9, 10, 11, 12},
       {1, 2, 3, 6, 4, 5, 7, 8, 9, 10, 11, 12},
       {2, 3, 1, 7, 8, 4, 5, 6, 9, 10, 11, 12},
       {3, 2, 1, 7, 8, 4, 5, 6, 9, 10, 11, 12},
       {4, 5, 9, 7, 8, 1, 2, 3, 6, 10, 11, 12},
       {5, 4, 9, 7, 8, 1, 2, 3, 6, 10, 11, 12},
       {10, 11, 12, 7, 8, 1, 2, 3, 4, 5, 6, 9},
       {11, 10, 12, 7, 8, 1, 2, 3, 4, 5, 6, 9}});
  f.note = "twelve rankings, four seats: greedy cohesion on exponential "
           "utilities picks {c1, c6, c7, c8}, shorting the six-voter "
           "coalition behind {c1, c2, c3}";
  f.expectations = {
      {"run_gcr", "lex-exponential", "{c1, c6, c7, c8}", "cohesive pairs win"},
      {"check_psc", "W = {c1, c6, c7, c8}", "violated, T = {c1, c2, c3}, owed 2",
       "half the voters agree"},
  };
  return f;
}

Fixture phragmen_waste_100() {
  Fixture f;
  f.id = "phragmen-waste-100";
  f.instance = approval_election(100, {{"B", Rat(1)}, {"C", rat(1, 200)}},
                                 [] {
                                   std::vector<std::vector<int>> sets(100, {1});
                                   sets[0] = {1, 2};
                                   return sets;
                                 }());
  f.note = "everyone wants the budget-sized project, one voter also backs a "
           "tiny one: continuous spending buys the tiny project first and "
           "the big one no longer fits";
  f.expectations = {
      {"run_phragmen", "", "{C}", "nearly all money wasted"},
  };
  return f;
}

using Builder = Fixture (*)();

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> entries = {
      {"onetown", onetown},
      {"twotown", twotown},
      {"circleville", circleville},
      {"pav-ejr-r3", pav_ejr_r3},
      {"core-empty-6", core_empty_6},
      {"priceable-vs-exhaustive", priceable_vs_exhaustive},
      {"rulex-fjr-22", rulex_fjr_22},
      {"pav-fjr-6", pav_fjr_6},
      {"laminar-4", laminar_4},
      {"nearly-laminar-4000", nearly_laminar_4000},
      {"ordinal-psc-3", ordinal_psc_3},
      {"ordinal-ejr-2", ordinal_ejr_2},
      {"ordinal-gcr-12", ordinal_gcr_12},
      {"phragmen-waste-100", phragmen_waste_100},
  };
  return entries;
}

} // namespace

const std::vector<std::string>& fixture_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, build] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

Fixture load_fixture(const std::string& id) {
  for (const auto& [fid, build] : registry())
    if (fid == id) return build();
  throw InputError("unknown fixture id: " + id);
}

Election scale_population(const Election& e, const Rat& factor) {
  if (factor <= 0) throw InputError("population factor must be positive");
  const VoterBlocks blocks = voter_blocks(e);
  std::vector<std::vector<std::pair<int, Rat>>> utilities;
  for (const auto& members : blocks.members) {
    const Rat scaled = Rat(members.size()) * factor;
    if (denominator(scaled) != 1)
      throw InputError("block of " + std::to_string(members.size()) +
                       " voters cannot scale by " + format_rat(factor));
    const long long copies = numerator(scaled).convert_to<long long>();
    utilities.insert(utilities.end(), copies, e.utils[members.front()]);
  }
  Cands candidates;
  for (int c = 1; c <= e.num_candidates(); ++c)
    candidates.emplace_back(e.name[c], e.cost[c]);
  const int scaled_n = static_cast<int>(utilities.size());
  return make_election(scaled_n, std::move(candidates), std::move(utilities));
}

} // namespace pbexact
