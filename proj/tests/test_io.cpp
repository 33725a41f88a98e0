#include "doctest.h"

#include "pbexact/axioms.hpp"
#include "pbexact/equal_shares.hpp"
#include "pbexact/errors.hpp"
#include "pbexact/fixtures.hpp"
#include "pbexact/instance_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace pbexact;
using Json = nlohmann::json;

namespace {

std::string write_tmp(const std::string& stem, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / (stem + ".json");
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

bool same_election(const Election& a, const Election& b) {
  return a.n == b.n && a.cost == b.cost && a.name == b.name && a.utils == b.utils;
}

} // namespace

TEST_CASE("instance documents parse with normalization to budget 1") {
  const std::string doc = R"({
    "format_version": 1,
    "budget": 90,
    "candidates": [
      {"id": "road", "cost": 20},
      {"id": "pool", "cost": "45"}
    ],
    "voters": [
      {"id": "v1", "approves": ["road"]},
      {"id": "v2", "approves": ["pool", 1]}
    ]
  })";
  ParsedInstance parsed = parse_instance(doc);
  CHECK_FALSE(parsed.ranked());
  const Election& e = parsed.election();
  CHECK(e.n == 2);
  CHECK(e.cost[1] == Rat(2, 9));
  CHECK(e.cost[2] == Rat(1, 2));
  CHECK(parsed.names[1] == "road");
  CHECK(e.utility(2, 1) == Rat(1)); // the bare 1 fell back to an index
  CHECK(parsed.num_candidates() == 2);
  CHECK_THROWS_AS(parsed.ranked_election(), InputError);
}

TEST_CASE("utility ballots carry exact rationals") {
  const std::string doc = R"({
    "format_version": 1,
    "budget": "3",
    "candidates": [{"id": "a", "cost": "1"}, {"id": "b", "cost": "2"}],
    "voters": [{"id": 1, "utilities": {"a": "1/2", "b": 1}}]
  })";
  const Election e = parse_instance(doc).election();
  CHECK(e.utility(1, 1) == Rat(1, 2));
  CHECK(e.utility(1, 2) == Rat(1));
  CHECK(e.cost[2] == Rat(2, 3));
}

TEST_CASE("ranked documents need a uniform budget/k cost") {
  const std::string doc = R"({
    "format_version": 1,
    "budget": 2,
    "candidates": [{"id": "x", "cost": 1}, {"id": "y", "cost": 1}],
    "voters": [{"id": 1, "ranking": ["y", "x"]}, {"id": 2, "ranking": ["x", "y"]}]
  })";
  ParsedInstance parsed = parse_instance(doc);
  REQUIRE(parsed.ranked());
  const RankedElection& re = parsed.ranked_election();
  CHECK(re.k == 2);
  CHECK(re.position(1, 2) == 1);
  CHECK_THROWS_AS(parsed.election(), InputError);

  CHECK_THROWS_AS(parse_instance(R"({
    "format_version": 1, "budget": 2,
    "candidates": [{"id": "x", "cost": 1}, {"id": "y", "cost": 2}],
    "voters": [{"id": 1, "ranking": ["y", "x"]}]
  })"),
                  InputError); // two costs
  CHECK_THROWS_AS(parse_instance(R"({
    "format_version": 1, "budget": 3,
    "candidates": [{"id": "x", "cost": 2}, {"id": "y", "cost": 2}],
    "voters": [{"id": 1, "ranking": ["y", "x"]}]
  })"),
                  InputError); // budget/cost is not an integer
}

TEST_CASE("instance validation names the offending field") {
  auto reject = [](const std::string& doc, const std::string& needle) {
    try {
      parse_instance(doc);
      FAIL_CHECK("expected rejection: " << needle);
    } catch (const InputError& err) {
      CHECK(std::string(err.what()).find(needle) != std::string::npos);
    }
  };
  reject("{", "malformed JSON");
  reject("[]", "JSON object");
  reject(R"({"budget": 1, "candidates": [], "voters": []})", "format_version");
  reject(R"({"format_version": 2, "budget": 1, "candidates": [], "voters": []})",
         "format_version");
  reject(R"({"format_version": 1, "budget": 0, "candidates": [], "voters": []})",
         "budget");
  reject(R"({"format_version": 1, "budget": 0.5, "candidates": [], "voters": []})",
         "budget");
  reject(R"({"format_version": 1, "budget": 1, "candidates": [], "voters": []})",
         "candidates");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 2}], "voters": []})",
         "exceeds the budget");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 1}, {"id": "a", "cost": 1}],
             "voters": [{"id": 1, "approves": ["a"]}]})",
         "duplicate id");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 1}],
             "voters": [{"id": 1, "approves": ["a"]}, {"id": 1, "approves": ["a"]}]})",
         "duplicate id");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 1}],
             "voters": [{"id": 1, "approves": ["b"]}]})",
         "unknown candidate");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 1}],
             "voters": [{"id": 1}]})",
         "needs one of");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 1}],
             "voters": [{"id": 1, "approves": ["a"], "utilities": {"a": 1}}]})",
         "carries both");
  reject(R"({"format_version": 1, "budget": 1,
             "candidates": [{"id": "a", "cost": 1}],
             "voters": [{"id": 1, "approves": ["a"]}, {"id": 2, "utilities": {"a": 1}}]})",
         "differs from the document's");
}

TEST_CASE("serialization round-trips cardinal and ranked instances") {
  Election town = scale_population(load_fixture("twotown").election(), Rat(1, 30000));
  std::string text = serialize_instance(town);
  CHECK(text == serialize_instance(town)); // deterministic bytes
  CHECK(same_election(parse_instance(text).election(), town));

  Election mixed = make_election(
      3, {{"a", Rat(1, 3)}, {"b", Rat(1, 2)}},
      {{{1, Rat(1, 7)}}, {{2, Rat(1)}}, {}});
  std::string mixed_text = serialize_instance(mixed);
  CHECK(Json::parse(mixed_text)["voters"][2]["utilities"] == Json::object());
  CHECK(same_election(parse_instance(mixed_text).election(), mixed));

  RankedElection re = load_fixture("ordinal-psc-3").ranked_election();
  ParsedInstance back = parse_instance(serialize_instance(re));
  REQUIRE(back.ranked());
  CHECK(back.ranked_election().k == re.k);
  CHECK(back.ranked_election().rankings == re.rankings);
  CHECK(back.names[2] == "c2");

  std::string with_meta = serialize_instance(town, R"({"source": "unit"})");
  Json doc = Json::parse(with_meta);
  CHECK(doc["meta"]["source"] == "unit");
  CHECK(doc["budget"] == "1");
  CHECK_THROWS_AS(serialize_instance(town, "{bad"), InputError);
}

TEST_CASE("outcome arguments resolve names, indices and files") {
  std::vector<std::string> names{"", "road", "pool", "park"};

  CHECK(parse_outcome_arg("outcome:{road, park}", names) == make_outcome({1, 3}));
  CHECK(parse_outcome_arg("outcome:{2}", names) == make_outcome({2}));
  CHECK(parse_outcome_arg("outcome:{}", names) == Outcome{});
  CHECK_THROWS_AS(parse_outcome_arg("outcome:road", names), InputError);
  CHECK_THROWS_AS(parse_outcome_arg("outcome:{lake}", names), InputError);

  std::string plain = write_tmp("outcome_plain", R"(["road", "pool"])");
  CHECK(parse_outcome_arg(plain, names) == make_outcome({1, 2}));
  std::string keyed = write_tmp("outcome_keyed", R"({"outcome": [3]})");
  CHECK(parse_outcome_arg(keyed, names) == make_outcome({3}));
  std::string selected = write_tmp("outcome_selected", R"({"selected": ["pool"]})");
  CHECK(parse_outcome_arg(selected, names) == make_outcome({2}));
  std::string bad = write_tmp("outcome_bad", R"({"stuff": 1})");
  CHECK_THROWS_AS(parse_outcome_arg(bad, names), InputError);
  CHECK_THROWS_AS(parse_outcome_arg("no_such_file.json", names), InputError);
  std::remove(plain.c_str());
  std::remove(keyed.c_str());
  std::remove(selected.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("trace files carry the run, the ledger and the extras") {
  Election e = scale_population(load_fixture("twotown").election(), Rat(1, 30000));
  RuleXResult r = run_rule_x(e);

  TraceFile t;
  t.rule = "equal-shares";
  t.names = {"", "L1", "L2", "L3", "R"};
  t.outcome = r.outcome;
  t.spent = total_cost(e, r.outcome);
  t.trace = r.trace;
  t.ledger = r.ledger;
  std::string text = serialize_trace(t);
  CHECK(text == serialize_trace(t));
  CHECK(text.back() == '\n');

  Json doc = Json::parse(text);
  CHECK(doc["format_version"] == 1);
  CHECK(doc["rule"] == "equal-shares");
  CHECK(doc["outcome"] == Json::array({"L1", "L2", "R"}));
  CHECK(doc["spent"] == "1");
  CHECK(doc["steps"].size() == 3);
  CHECK(doc["steps"][0]["candidate"] == "L1");
  CHECK(doc["steps"][0]["rho"] == "1/6");
  CHECK(doc["steps"][0]["rho_kind"] == "price-per-utility");
  CHECK(doc["steps"][0]["tie_set"] == Json::array({"L1", "L2", "L3"}));
  CHECK(doc["steps"][2]["payments"][0] == Json::array({3, "1/3"}));
  CHECK(doc["ledger"]["b"] == "1");
  CHECK(doc["ledger"]["share"] == "1/3");
  CHECK(doc["ledger"]["payments"].size() == 3);
  CHECK(doc["ledger"]["remaining"][0] == "0");
  CHECK(doc["ledger"]["synthetic"].empty());
  CHECK_FALSE(doc.contains("rounds"));
  CHECK_FALSE(doc.contains("eps"));

  TraceFile g;
  g.rule = "gcr";
  g.names = t.names;
  g.outcome = make_outcome({1});
  g.spent = Rat(1, 3);
  g.rounds = std::vector<CohesiveRound>{{Rat(2), {1, 2}, {1}}};
  g.eps = Rat(1, 27);
  Json gd = Json::parse(serialize_trace(g));
  CHECK(gd["rounds"][0]["beta"] == "2");
  CHECK(gd["rounds"][0]["bundle"] == Json::array({"L1"}));
  CHECK(gd["rounds"][0]["group"] == Json::array({1, 2}));
  CHECK(gd["eps"] == "1/27");
  CHECK_FALSE(gd.contains("steps"));
}

TEST_CASE("price systems parse from documents and from trace ledgers") {
  Election e = scale_population(load_fixture("twotown").election(), Rat(1, 30000));
  RuleXResult r = run_rule_x(e);
  std::vector<std::string> names{"", "L1", "L2", "L3", "R"};

  PriceSystem ps = price_system_from_ledger(r.ledger);
  std::string text = serialize_price_system(ps, names);
  PriceSystem back = parse_price_system(text, e.n, names);
  CHECK(back.b == ps.b);
  CHECK(back.payments == ps.payments);

  TraceFile t;
  t.rule = "equal-shares";
  t.names = names;
  t.outcome = r.outcome;
  t.spent = Rat(1);
  t.ledger = r.ledger;
  PriceSystem from_trace = parse_price_system(serialize_trace(t), e.n, names);
  CHECK(from_trace.payments == ps.payments);
  CHECK(verify_price_system(e, r.outcome, from_trace).status ==
        VerdictStatus::Satisfied);

  CHECK_THROWS_AS(parse_price_system("{}", e.n, names), InputError);
  CHECK_THROWS_AS(parse_price_system(R"({"b": "1", "payments": [{}]})", e.n, names),
                  InputError);
  CHECK_THROWS_AS(parse_price_system("nope", e.n, names), InputError);

  // voters who paid nothing keep an empty object row
  Election pe = load_fixture("priceable-vs-exhaustive").election();
  RuleXResult pr = run_rule_x(pe);
  PriceSystem pps = price_system_from_ledger(pr.ledger);
  std::string ptext = serialize_price_system(pps, pe.name);
  CHECK(Json::parse(ptext)["payments"][0] == Json::object());
  CHECK(parse_price_system(ptext, pe.n, pe.name).payments == pps.payments);
}

TEST_CASE("verdicts serialize their witnesses") {
  Election e = load_fixture("pav-ejr-r3").election();
  const std::vector<std::string>& names = e.name;

  AxiomVerdict ok{};
  Json sat = Json::parse(serialize_verdict("ejr", ok, names));
  CHECK(sat["axiom"] == "ejr");
  CHECK(sat["status"] == "satisfied");
  CHECK_FALSE(sat.contains("witness"));

  AxiomVerdict v = check_ejr(e, make_outcome({1, 2, 3}));
  Json bad = Json::parse(serialize_verdict("ejr", v, names));
  CHECK(bad["status"] == "violated");
  CHECK(bad["witness"]["bundle"] == Json::array({"b1"}));
  CHECK(bad["witness"]["group"] == Json::array({9}));
  CHECK(bad["witness"]["threshold"] == "1");
  CHECK(bad["witness"]["floors"][0] == Json::array({"b1", "1"}));

  AxiomVerdict price;
  price.status = VerdictStatus::Violated;
  price.witness = ViolationWitness{};
  price.witness->voter = 2;
  price.witness->candidate = 1;
  price.witness->condition = "C1";
  Json pj = Json::parse(serialize_verdict("priceable", price, names));
  CHECK(pj["witness"]["voter"] == 2);
  CHECK(pj["witness"]["candidate"] == "a1");
  CHECK(pj["witness"]["condition"] == "C1");

  AxiomVerdict inc;
  inc.status = VerdictStatus::Inconclusive;
  inc.note = "bundle enumeration over 20 candidates exceeds the bound of 12";
  Json ij = Json::parse(serialize_verdict("core", inc, names));
  CHECK(ij["status"] == "inconclusive");
  CHECK(ij["note"] == inc.note);
}
