#pragma once
#include "pbexact/axioms.hpp"
#include "pbexact/election.hpp"
#include "pbexact/gcr.hpp"
#include "pbexact/ledger.hpp"
#include "pbexact/ordinal.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pbexact {

// A parsed instance document. Costs are normalized by the document budget,
// so the election always has budget 1; `names` keeps the document ids per
// candidate ([1..m], slot 0 empty) for printing and round-trips.
struct ParsedInstance {
  std::variant<Election, RankedElection> value;
  std::vector<std::string> names;

  bool ranked() const { return std::holds_alternative<RankedElection>(value); }
  const Election& election() const;
  const RankedElection& ranked_election() const;
  int num_candidates() const { return static_cast<int>(names.size()) - 1; }
};

// JSON document: format_version 1, budget, candidates [{id, cost}], voters
// [{id, approves | utilities | ranking}], optional free-form meta. Exactly
// one ballot kind across the document; ranked documents need uniform costs
// budget/k. Errors name the offending field.
ParsedInstance parse_instance(const std::string& text);

// Inverse of parse_instance up to normalization: emits budget "1" and the
// normalized costs. parse_instance(serialize_instance(x)) reproduces x.
std::string serialize_instance(const Election& e,
                               const std::string& meta_json = "");
std::string serialize_instance(const RankedElection& re,
                               const std::vector<std::string>& names = {},
                               const std::string& meta_json = "");

std::string read_text_file(const std::string& path);

// Outcome argument: inline "outcome:{id, id, ...}" or a path to a JSON file
// carrying "outcome" or "selected" (or a bare array). Ids resolve against
// `names`; unmatched integer tokens fall back to candidate indices.
Outcome parse_outcome_arg(const std::string& arg,
                          const std::vector<std::string>& names);

// One rule run as a JSON document: outcome, spending, per-step trace,
// final ledger, and the rule-specific extras that exist.
struct TraceFile {
  std::string rule;
  std::vector<std::string> names; // [1..m], slot 0 empty
  Outcome outcome;
  Rat spent;
  std::optional<RuleTrace> trace;
  std::optional<PaymentLedger> ledger;
  std::optional<std::vector<CohesiveRound>> rounds;
  std::optional<Rat> eps;
};

std::string serialize_trace(const TraceFile& t);

// Accepts a price-system document {"b", "payments"} or a trace document
// whose "ledger" carries one; n and names fix the payment shape.
PriceSystem parse_price_system(const std::string& text, int n,
                               const std::vector<std::string>& names);

std::string serialize_price_system(const PriceSystem& ps,
                                   const std::vector<std::string>& names);

// Checker verdict as JSON; witness voters stay complete here even when the
// text renderer elides them.
std::string serialize_verdict(const std::string& axiom, const AxiomVerdict& v,
                              const std::vector<std::string>& names);

} // namespace pbexact
