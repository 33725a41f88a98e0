// Python bindings speak JSON at the boundary: instances go in as documents,
// results come back as the same documents the CLI emits, so the exactness
// of the rational arithmetic survives the trip.
#include "pbexact/axioms.hpp"
#include "pbexact/election.hpp"
#include "pbexact/equal_shares.hpp"
#include "pbexact/errors.hpp"
#include "pbexact/fixtures.hpp"
#include "pbexact/gcr.hpp"
#include "pbexact/instance_io.hpp"
#include "pbexact/ordinal.hpp"
#include "pbexact/pav.hpp"
#include "pbexact/phragmen.hpp"

#include <json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace pbexact;
using Json = nlohmann::json;

namespace {

ParsedInstance instance_of(const std::string& document) {
  return parse_instance(document);
}

ParsedInstance fixture_instance(const std::string& id) {
  const Fixture f = load_fixture(id);
  ParsedInstance pi;
  if (f.ranked()) {
    const RankedElection& re = f.ranked_election();
    pi.names.resize(re.m + 1);
    for (int c = 1; c <= re.m; ++c) pi.names[c] = "c" + std::to_string(c);
    pi.value = re;
  } else {
    pi.names = f.election().name;
    pi.value = f.election();
  }
  return pi;
}

ParsedInstance load(const std::string& source) {
  if (source.rfind("fixture:", 0) == 0) return fixture_instance(source.substr(8));
  if (source.rfind("fixtures/", 0) == 0) return fixture_instance(source.substr(9));
  return instance_of(source);
}

const Election& cardinal(const ParsedInstance& pi, const std::string& scheme,
                         std::optional<Election>& storage) {
  if (!pi.ranked()) return pi.election();
  storage = to_cardinal(pi.ranked_election(),
                        scheme == "borda" ? UtilityScheme::Borda
                                          : UtilityScheme::LexExponential);
  return *storage;
}

Json outcome_json(const Outcome& w, const std::vector<std::string>& names) {
  Json arr = Json::array();
  for (int c : w.ids) arr.push_back(names[c]);
  return arr;
}

Outcome outcome_of(const std::vector<std::string>& ids, const ParsedInstance& pi) {
  std::string inline_arg = "outcome:{";
  for (size_t j = 0; j < ids.size(); ++j) {
    if (j > 0) inline_arg += ",";
    inline_arg += ids[j];
  }
  inline_arg += "}";
  return parse_outcome_arg(inline_arg, pi.names);
}

std::string run_rule(const std::string& source, const std::string& rule,
                     const std::string& tie_break, const std::string& scheme) {
  const ParsedInstance pi = load(source);
  const TieBreak tb =
      tie_break == "min-cost" ? TieBreak::MinCostThenIndex : TieBreak::LowestIndex;
  Json doc;
  doc["rule"] = rule;
  std::optional<Election> storage;
  if (rule == "equal-shares-lex") {
    const RuleXResult r = run_rule_x_lex(pi.ranked_election(), tb);
    doc["outcome"] = outcome_json(r.outcome, pi.names);
    doc["spent"] = format_rat(Rat(r.outcome.size()) / pi.ranked_election().k);
  } else if (rule == "equal-shares") {
    const Election& e = cardinal(pi, scheme, storage);
    const RuleXResult r = run_rule_x(e, tb);
    doc["outcome"] = outcome_json(r.outcome, pi.names);
    doc["spent"] = format_rat(total_cost(e, r.outcome));
  } else if (rule == "equal-shares-exhaustive") {
    const Election& e = cardinal(pi, scheme, storage);
    const ExhaustiveRuleXResult r = run_rule_x_exhaustive(e, tb);
    doc["outcome"] = outcome_json(r.outcome, pi.names);
    doc["spent"] = format_rat(total_cost(e, r.outcome));
    doc["eps"] = format_rat(r.eps_used);
  } else if (rule == "gcr") {
    const Election& e = cardinal(pi, scheme, storage);
    const GcrResult r = run_gcr(e);
    doc["outcome"] = outcome_json(r.outcome, pi.names);
    doc["spent"] = format_rat(total_cost(e, r.outcome));
  } else if (rule == "pav") {
    const Election& e = cardinal(pi, scheme, storage);
    const std::vector<Outcome> all = run_pav(e);
    doc["outcome"] = outcome_json(all.front(), pi.names);
    doc["spent"] = format_rat(total_cost(e, all.front()));
    Json ties = Json::array();
    for (const Outcome& w : all) ties.push_back(outcome_json(w, pi.names));
    doc["outcomes"] = std::move(ties);
  } else if (rule == "phragmen") {
    const Election& e = cardinal(pi, scheme, storage);
    const PhragmenResult r = run_phragmen(e, tb);
    doc["outcome"] = outcome_json(r.outcome, pi.names);
    doc["spent"] = format_rat(total_cost(e, r.outcome));
  } else {
    throw InputError("unknown rule: " + rule);
  }
  return doc.dump();
}

std::string check_axiom(const std::string& source, const std::string& axiom,
                        const std::vector<std::string>& outcome,
                        const std::string& alpha, const std::string& scheme,
                        bool strict) {
  const ParsedInstance pi = load(source);
  const Outcome w = outcome_of(outcome, pi);
  std::optional<Election> storage;
  AxiomVerdict verdict;
  if (axiom == "psc") {
    verdict = check_psc(pi.ranked_election(), w);
  } else {
    const Election& e = cardinal(pi, scheme, storage);
    if (axiom == "ejr") {
      verdict = !strict && classify(e).approval
                    ? check_ejr_approval(e, w)
                    : check_ejr(e, w, SearchBounds{}, !strict);
    } else if (axiom == "fjr") {
      verdict = check_fjr(e, w);
    } else if (axiom == "core") {
      verdict = check_core(e, w);
    } else if (axiom == "alpha-core") {
      const Rat a = alpha.empty() ? alpha_core_log_bound(e) : parse_rat(alpha);
      verdict = check_alpha_core(e, w, a);
    } else if (axiom == "exhaustive") {
      verdict = check_exhaustive(e, w);
    } else if (axiom == "priceable") {
      const std::optional<PriceSystem> ps = find_price_system(e, w);
      if (ps) {
        verdict.note = "price system found with b = " + format_rat(ps->b);
      } else {
        verdict.status = VerdictStatus::Violated;
        verdict.note = "no price system finances this outcome";
      }
    } else {
      throw InputError("unknown axiom: " + axiom);
    }
  }
  return serialize_verdict(axiom, verdict, pi.names);
}

std::string dump_fixture(const std::string& id) {
  const Fixture f = load_fixture(id);
  if (f.ranked()) return serialize_instance(f.ranked_election());
  return serialize_instance(f.election());
}

std::string scale(const std::string& source, const std::string& factor) {
  const ParsedInstance pi = load(source);
  return serialize_instance(scale_population(pi.election(), parse_rat(factor)));
}

} // namespace

PYBIND11_MODULE(pbexact, mod) {
  mod.doc() = "exact participatory budgeting rules and axiom checkers";

  py::register_exception<InputError>(mod, "InputError");
  py::register_exception<BoundExceeded>(mod, "BoundExceededError");

  mod.def("fixture_ids", [] { return fixture_ids(); },
          "registered fixture ids in registry order");
  mod.def("fixture", &dump_fixture, py::arg("id"),
          "fixture instance as a JSON document");
  mod.def("run", &run_rule, py::arg("instance"), py::arg("rule"),
          py::arg("tie_break") = "index", py::arg("scheme") = "lex",
          "run a rule; instance is a JSON document or fixture:<id>");
  mod.def("check", &check_axiom, py::arg("instance"), py::arg("axiom"),
          py::arg("outcome"), py::arg("alpha") = "", py::arg("scheme") = "lex",
          py::arg("strict") = false,
          "check an axiom for an outcome given as a list of candidate ids");
  mod.def("scale_population", &scale, py::arg("instance"), py::arg("factor"),
          "scale voter blocks by a rational factor and return the instance");
}
