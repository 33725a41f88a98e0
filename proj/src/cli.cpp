#include "pbexact/cli.hpp"

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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace pbexact {

namespace {

using Json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kViolated = 3;
constexpr int kInconclusive = 4;
constexpr int kRefused = 5;

std::optional<int> env_bound() {
  const char* raw = std::getenv("PB_SEARCH_BOUND");
  if (raw == nullptr) return std::nullopt;
  try {
    size_t used = 0;
    const int v = std::stoi(raw, &used);
    if (used == std::string(raw).size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string("PB_SEARCH_BOUND must be a positive integer, got \"") +
                   raw + "\"");
}

ParsedInstance instance_of(const Fixture& f) {
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

ParsedInstance resolve_instance(const std::string& arg) {
  if (arg.rfind("fixtures/", 0) == 0) return instance_of(load_fixture(arg.substr(9)));
  if (arg.rfind("fixture:", 0) == 0) return instance_of(load_fixture(arg.substr(8)));
  return parse_instance(read_text_file(arg));
}

UtilityScheme scheme_of(const std::string& name) {
  return name == "borda" ? UtilityScheme::Borda : UtilityScheme::LexExponential;
}

// cardinal rules accept ranked instances through the chosen utility scheme
const Election& cardinal_view(const ParsedInstance& pi, const std::string& scheme,
                              std::optional<Election>& storage) {
  if (!pi.ranked()) return pi.election();
  storage = to_cardinal(pi.ranked_election(), scheme_of(scheme));
  return *storage;
}

std::string set_text(const std::vector<int>& ids, const std::vector<std::string>& names) {
  std::string out = "{";
  for (size_t j = 0; j < ids.size(); ++j) {
    if (j > 0) out += ", ";
    out += names[ids[j]];
  }
  return out + "}";
}

Json name_array(const std::vector<int>& ids, const std::vector<std::string>& names) {
  Json arr = Json::array();
  for (int c : ids) arr.push_back(names[c]);
  return arr;
}

std::string group_text(const std::vector<int>& group) {
  std::string out = "{";
  const size_t shown = group.size() > 16 ? 8 : group.size();
  for (size_t j = 0; j < shown; ++j) {
    if (j > 0) out += ", ";
    out += "v" + std::to_string(group[j]);
  }
  if (shown < group.size())
    out += ", ... " + std::to_string(group.size()) + " voters in all";
  return out + "}";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
}

// ---- run ----------------------------------------------------------------

struct RunOutput {
  std::vector<Outcome> outcomes; // deterministic outcome first unless tie "all"
  bool all_ties = false;
  std::optional<Rat> eps;
  std::optional<TraceFile> trace;
};

struct RunRequest {
  std::string rule;
  std::string tie = "index";
  std::string scheme = "lex";
  bool want_trace = false;
  bool skip_unaffordable = false;
};

TieBreak tie_break_of(const std::string& tie) {
  return tie == "min-cost" ? TieBreak::MinCostThenIndex : TieBreak::LowestIndex;
}

RunOutput execute_rule(const RunRequest& req, const ParsedInstance& pi) {
  const std::optional<int> env = env_bound();
  RunOutput out;
  const TieBreak tb = tie_break_of(req.tie);
  const bool all = req.tie == "all";
  if (all && req.want_trace)
    throw InputError("--trace is not available with --tie-break all");

  if (req.rule == "equal-shares-lex") {
    if (all) throw InputError("--tie-break all is not supported for equal-shares-lex");
    const RankedElection& re = pi.ranked_election();
    RuleXResult r = run_rule_x_lex(re, tb);
    out.outcomes = {r.outcome};
    if (req.want_trace) {
      const Rat spent = Rat(r.outcome.size()) / re.k;
      out.trace = TraceFile{req.rule, pi.names, r.outcome, spent,
                            std::move(r.trace), std::move(r.ledger), {}, {}};
    }
    return out;
  }

  std::optional<Election> storage;
  const Election& e = cardinal_view(pi, req.scheme, storage);

  if (req.rule == "equal-shares") {
    if (all) {
      out.all_ties = true;
      out.outcomes = run_rule_x_all_ties(e);
      return out;
    }
    RuleXResult r = run_rule_x(e, tb);
    out.outcomes = {r.outcome};
    if (req.want_trace)
      out.trace = TraceFile{req.rule, pi.names, r.outcome, total_cost(e, r.outcome),
                            std::move(r.trace), std::move(r.ledger), {}, {}};
    return out;
  }
  if (req.rule == "equal-shares-exhaustive") {
    if (all)
      throw InputError("--tie-break all is not supported for equal-shares-exhaustive");
    ExhaustiveRuleXResult r = run_rule_x_exhaustive(e, tb);
    out.outcomes = {r.outcome};
    out.eps = r.eps_used;
    if (req.want_trace)
      out.trace = TraceFile{req.rule, pi.names, r.outcome, total_cost(e, r.outcome),
                            std::move(r.trace), std::move(r.ledger), {}, r.eps_used};
    return out;
  }
  if (req.rule == "gcr") {
    GcrLimits limits;
    if (env) limits.max_candidates = *env;
    if (all) {
      out.all_ties = true;
      out.outcomes = run_gcr_all_ties(e, limits);
      return out;
    }
    GcrResult r = run_gcr(e, limits);
    out.outcomes = {r.outcome};
    if (req.want_trace) {
      PaymentLedger ledger = gcr_payment_construction(r.rounds, e, limits);
      out.trace = TraceFile{req.rule, pi.names, r.outcome, total_cost(e, r.outcome),
                            {}, std::move(ledger), std::move(r.rounds), {}};
    }
    return out;
  }
  if (req.rule == "pav") {
    out.outcomes = run_pav(e, env ? *env : 24);
    out.all_ties = all;
    if (!all) out.outcomes.resize(1); // lex-least maximizer is the canonical pick
    if (req.want_trace)
      out.trace = TraceFile{req.rule, pi.names, out.outcomes.front(),
                            total_cost(e, out.outcomes.front()), {}, {}, {}, {}};
    return out;
  }
  if (req.rule == "phragmen") {
    if (all) throw InputError("--tie-break all is not supported for phragmen");
    PhragmenResult r = run_phragmen(e, tb, req.skip_unaffordable);
    out.outcomes = {r.outcome};
    if (req.want_trace)
      out.trace = TraceFile{req.rule, pi.names, r.outcome, total_cost(e, r.outcome),
                            std::move(r.trace), {}, {}, {}};
    return out;
  }
  throw InputError("unknown rule: " + req.rule);
}

Rat spent_of(const ParsedInstance& pi, const Outcome& w) {
  if (!pi.ranked()) return total_cost(pi.election(), w);
  return Rat(w.size()) / pi.ranked_election().k;
}

Json run_json(const RunRequest& req, const ParsedInstance& pi, const RunOutput& out) {
  Json doc;
  doc["rule"] = req.rule;
  if (out.all_ties) {
    Json arr = Json::array();
    for (const Outcome& w : out.outcomes)
      arr.push_back({{"outcome", name_array(w.ids, pi.names)},
                     {"spent", format_rat(spent_of(pi, w))}});
    doc["outcomes"] = std::move(arr);
  } else {
    doc["outcome"] = name_array(out.outcomes.front().ids, pi.names);
    doc["spent"] = format_rat(spent_of(pi, out.outcomes.front()));
  }
  if (out.eps) doc["eps"] = format_rat(*out.eps);
  return doc;
}

void print_run_text(const ParsedInstance& pi, const RunOutput& out) {
  for (const Outcome& w : out.outcomes) {
    std::cout << set_text(w.ids, pi.names) << " cost "
              << format_rat(spent_of(pi, w));
    if (!out.all_ties && out.eps) std::cout << " (eps " << format_rat(*out.eps) << ")";
    std::cout << "\n";
  }
}

int do_run(const RunRequest& req, const std::string& instance_arg,
           const std::string& trace_path, bool json, bool all_fixtures) {
  if (all_fixtures) {
    bool refused = false;
    Json doc;
    for (const std::string& id : fixture_ids()) {
      const ParsedInstance pi = instance_of(load_fixture(id));
      try {
        const RunOutput out = execute_rule(req, pi);
        if (json) {
          doc[id] = run_json(req, pi, out);
        } else {
          std::cout << id << ": ";
          std::cout << set_text(out.outcomes.front().ids, pi.names) << " cost "
                    << format_rat(spent_of(pi, out.outcomes.front()));
          if (out.outcomes.size() > 1)
            std::cout << " (+" << out.outcomes.size() - 1 << " tied)";
          std::cout << "\n";
        }
      } catch (const InputError& err) {
        if (json)
          doc[id] = Json{{"skipped", err.what()}};
        else
          std::cout << id << ": skipped (" << err.what() << ")\n";
      } catch (const BoundExceeded& err) {
        refused = true;
        if (json)
          doc[id] = Json{{"refused", err.what()}};
        else
          std::cout << id << ": refused (" << err.what() << ")\n";
      }
    }
    if (json) std::cout << doc.dump(2) << "\n";
    return refused ? kRefused : kOk;
  }

  const ParsedInstance pi = resolve_instance(instance_arg);
  const RunOutput out = execute_rule(req, pi);
  if (!trace_path.empty() && out.trace)
    write_file(trace_path, serialize_trace(*out.trace));
  if (json)
    std::cout << run_json(req, pi, out).dump(2) << "\n";
  else
    print_run_text(pi, out);
  return kOk;
}

// ---- check --------------------------------------------------------------

struct CheckRequest {
  std::string axiom;
  std::string alpha;
  std::string scheme = "lex";
  int bound_n = 0; // 0 = unset
  int bound_m = 0;
  bool strict = false;
};

SearchBounds effective_bounds(const CheckRequest& req, const SearchBounds& fallback) {
  SearchBounds bounds = fallback;
  if (const std::optional<int> env = env_bound()) {
    bounds.max_bundle_candidates = *env;
    bounds.max_group_pool = *env;
  }
  if (req.bound_m > 0) bounds.max_bundle_candidates = req.bound_m;
  if (req.bound_n > 0) bounds.max_group_pool = req.bound_n;
  return bounds;
}

AxiomVerdict run_check(const CheckRequest& req, const ParsedInstance& pi,
                       const Outcome& w, std::optional<PriceSystem>* found) {
  if (req.axiom == "psc") return check_psc(pi.ranked_election(), w);

  std::optional<Election> storage;
  const Election& e = cardinal_view(pi, req.scheme, storage);
  if (req.axiom == "ejr") {
    if (!req.strict && classify(e).approval)
      return check_ejr_approval(e, w, effective_bounds(req, SearchBounds{20, 20}));
    return check_ejr(e, w, effective_bounds(req, SearchBounds{}), !req.strict);
  }
  if (req.axiom == "fjr") return check_fjr(e, w, effective_bounds(req, SearchBounds{}));
  if (req.axiom == "core") return check_core(e, w, effective_bounds(req, SearchBounds{}));
  if (req.axiom == "alpha-core") {
    const Rat alpha = req.alpha.empty() ? alpha_core_log_bound(e) : parse_rat(req.alpha);
    return check_alpha_core(e, w, alpha, effective_bounds(req, SearchBounds{}));
  }
  if (req.axiom == "exhaustive") return check_exhaustive(e, w);
  if (req.axiom == "priceable") {
    *found = find_price_system(e, w);
    AxiomVerdict verdict;
    if (*found) {
      verdict.note = "price system found with b = " + format_rat((*found)->b);
    } else {
      verdict.status = VerdictStatus::Violated;
      verdict.note = "no price system finances this outcome";
    }
    return verdict;
  }
  throw InputError("unknown axiom: " + req.axiom);
}

void print_witness_text(const ViolationWitness& w, const std::vector<std::string>& names) {
  if (!w.group.empty()) std::cout << "  group: " << group_text(w.group) << "\n";
  if (!w.bundle.empty()) std::cout << "  bundle: " << set_text(w.bundle, names) << "\n";
  if (w.beta) std::cout << "  beta: " << format_rat(*w.beta) << "\n";
  if (w.threshold) std::cout << "  threshold: " << format_rat(*w.threshold) << "\n";
  if (w.entitlement) std::cout << "  entitlement: " << w.entitlement->str() << "\n";
  if (w.candidate) std::cout << "  candidate: " << names[*w.candidate] << "\n";
  if (w.voter) std::cout << "  voter: v" << *w.voter << "\n";
  if (!w.condition.empty()) std::cout << "  condition: " << w.condition << "\n";
}

int verdict_exit(const AxiomVerdict& verdict) {
  switch (verdict.status) {
    case VerdictStatus::Satisfied: return kOk;
    case VerdictStatus::Violated: return kViolated;
    case VerdictStatus::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int report_verdict(const std::string& axiom, const AxiomVerdict& verdict,
                   const std::vector<std::string>& names, bool json,
                   const std::optional<PriceSystem>& found) {
  if (json) {
    Json doc = Json::parse(serialize_verdict(axiom, verdict, names));
    if (found) doc["price_system"] = Json::parse(serialize_price_system(*found, names));
    std::cout << doc.dump(2) << "\n";
    return verdict_exit(verdict);
  }
  switch (verdict.status) {
    case VerdictStatus::Satisfied:
      std::cout << "satisfied" << (verdict.note.empty() ? "" : ": " + verdict.note) << "\n";
      break;
    case VerdictStatus::Violated:
      std::cout << "violated" << (verdict.note.empty() ? "" : ": " + verdict.note) << "\n";
      if (verdict.witness) print_witness_text(*verdict.witness, names);
      break;
    case VerdictStatus::Inconclusive:
      std::cout << "inconclusive" << (verdict.note.empty() ? "" : ": " + verdict.note)
                << "\n";
      break;
  }
  return verdict_exit(verdict);
}

int do_check(const CheckRequest& req, const std::string& instance_arg,
             const std::string& outcome_arg, bool json) {
  const ParsedInstance pi = resolve_instance(instance_arg);
  const Outcome w = parse_outcome_arg(outcome_arg, pi.names);
  std::optional<PriceSystem> found;
  const AxiomVerdict verdict = run_check(req, pi, w, &found);
  return report_verdict(req.axiom, verdict, pi.names, json, found);
}

// ---- fixtures -----------------------------------------------------------

int do_fixtures(const std::string& action, const std::string& id, bool json) {
  if (action == "list") {
    Json doc = Json::array();
    for (const std::string& fid : fixture_ids()) {
      const Fixture f = load_fixture(fid);
      if (json) {
        Json entry;
        entry["id"] = fid;
        if (f.ranked()) {
          entry["ballots"] = "ranking";
          entry["n"] = f.ranked_election().n;
          entry["m"] = f.ranked_election().m;
          entry["k"] = f.ranked_election().k;
        } else {
          entry["ballots"] = classify(f.election()).approval ? "approves" : "utilities";
          entry["n"] = f.election().n;
          entry["m"] = f.election().num_candidates();
        }
        entry["note"] = f.note;
        doc.push_back(std::move(entry));
      } else {
        std::cout << fid;
        if (f.ranked())
          std::cout << "  ranked n=" << f.ranked_election().n
                    << " m=" << f.ranked_election().m << " k=" << f.ranked_election().k;
        else
          std::cout << "  " << (classify(f.election()).approval ? "approval" : "cardinal")
                    << " n=" << f.election().n << " m=" << f.election().num_candidates();
        std::cout << "\n";
      }
    }
    if (json) std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  if (action == "dump") {
    if (id.empty()) throw InputError("fixtures dump needs a fixture id");
    const Fixture f = load_fixture(id);
    Json meta;
    meta["note"] = f.note;
    Json exp = Json::array();
    for (const FixtureExpectation& x : f.expectations)
      exp.push_back({{"anchor", x.anchor},
                     {"arguments", x.arguments},
                     {"expected", x.expected},
                     {"operation", x.operation}});
    meta["expectations"] = std::move(exp);
    if (f.ranked())
      std::cout << serialize_instance(f.ranked_election(), {}, meta.dump());
    else
      std::cout << serialize_instance(f.election(), meta.dump());
    return kOk;
  }
  throw InputError("fixtures action must be list or dump, got \"" + action + "\"");
}

// ---- certify ------------------------------------------------------------

int do_certify(const std::string& instance_arg, const std::string& outcome_arg,
               const std::string& price_arg, const std::string& scheme, bool json) {
  const ParsedInstance pi = resolve_instance(instance_arg);
  std::optional<Election> storage;
  const Election& e = cardinal_view(pi, scheme, storage);
  const Outcome w = parse_outcome_arg(outcome_arg, pi.names);
  const PriceSystem ps = parse_price_system(read_text_file(price_arg), e.n, pi.names);
  const AxiomVerdict verdict = verify_price_system(e, w, ps);
  if (json) {
    std::cout << serialize_verdict("priceable", verdict, pi.names);
    return verdict_exit(verdict);
  }
  if (verdict.status == VerdictStatus::Satisfied) {
    std::cout << "price system valid (b = " << format_rat(ps.b) << ")\n";
    return kOk;
  }
  std::cout << "price system invalid"
            << (verdict.note.empty() ? "" : ": " + verdict.note) << "\n";
  if (verdict.witness) print_witness_text(*verdict.witness, pi.names);
  return kViolated;
}

} // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"exact rules and axiom checkers for participatory budgeting"};
  app.require_subcommand(1);

  RunRequest run_req;
  CheckRequest check_req;
  std::string instance_arg, outcome_arg, price_arg, trace_path;
  std::string fixtures_action, fixtures_id;
  bool json = false, all_fixtures = false;

  CLI::App* run_cmd = app.add_subcommand("run", "run a rule on an instance");
  run_cmd->add_option("--rule", run_req.rule, "rule to run")
      ->required()
      ->check(CLI::IsMember({"equal-shares", "equal-shares-exhaustive", "gcr", "pav",
                             "phragmen", "equal-shares-lex"}));
  run_cmd->add_option("--tie-break", run_req.tie, "index, min-cost, or all")
      ->check(CLI::IsMember({"index", "min-cost", "all"}));
  run_cmd->add_option("--scheme", run_req.scheme,
                      "utility scheme for ranked instances (lex or borda)")
      ->check(CLI::IsMember({"lex", "borda"}));
  run_cmd->add_option("--trace", trace_path, "write a trace document here");
  run_cmd->add_flag("--skip-unaffordable", run_req.skip_unaffordable,
                    "phragmen: drop overshooting candidates and continue");
  run_cmd->add_flag("--json", json, "machine-readable output");
  run_cmd->add_flag("--all-fixtures", all_fixtures, "run on every fixture");
  run_cmd->add_option("instance", instance_arg, "instance file or fixtures/<id>");

  CLI::App* check_cmd = app.add_subcommand("check", "check an axiom on an outcome");
  check_cmd->add_option("--axiom", check_req.axiom, "axiom to check")
      ->required()
      ->check(CLI::IsMember({"ejr", "fjr", "core", "alpha-core", "psc", "priceable",
                             "exhaustive"}));
  check_cmd->add_option("--alpha", check_req.alpha,
                        "alpha for alpha-core (default: proven log bound)");
  check_cmd->add_option("--bound-n", check_req.bound_n, "voter pool cap");
  check_cmd->add_option("--bound-m", check_req.bound_m, "bundle candidate cap");
  check_cmd->add_flag("--strict", check_req.strict,
                      "ejr without the one-candidate allowance");
  check_cmd->add_option("--scheme", check_req.scheme,
                        "utility scheme for ranked instances (lex or borda)")
      ->check(CLI::IsMember({"lex", "borda"}));
  check_cmd->add_flag("--json", json, "machine-readable output");
  check_cmd->add_option("instance", instance_arg, "instance file or fixtures/<id>")
      ->required();
  check_cmd->add_option("outcome", outcome_arg, "outcome:{ids} or a JSON file")
      ->required();

  CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "list or dump fixtures");
  fixtures_cmd->add_option("action", fixtures_action, "list or dump")->required();
  fixtures_cmd->add_option("id", fixtures_id, "fixture id for dump");
  fixtures_cmd->add_flag("--json", json, "machine-readable output");

  CLI::App* certify_cmd =
      app.add_subcommand("certify", "verify a price system for an outcome");
  certify_cmd->add_option("instance", instance_arg, "instance file or fixtures/<id>")
      ->required();
  certify_cmd->add_option("outcome", outcome_arg, "outcome:{ids} or a JSON file")
      ->required();
  certify_cmd->add_option("pricesystem", price_arg,
                          "price system or trace document")
      ->required();
  certify_cmd->add_option("--scheme", check_req.scheme,
                          "utility scheme for ranked instances (lex or borda)")
      ->check(CLI::IsMember({"lex", "borda"}));
  certify_cmd->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run_cmd->parsed()) {
      if (instance_arg.empty() && !all_fixtures)
        throw InputError("run needs an instance argument or --all-fixtures");
      run_req.want_trace = !trace_path.empty();
      return do_run(run_req, instance_arg, trace_path, json, all_fixtures);
    }
    if (check_cmd->parsed())
      return do_check(check_req, instance_arg, outcome_arg, json);
    if (fixtures_cmd->parsed()) return do_fixtures(fixtures_action, fixtures_id, json);
    if (certify_cmd->parsed())
      return do_certify(instance_arg, outcome_arg, price_arg, check_req.scheme, json);
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return check_cmd->parsed() ? kInconclusive : kRefused;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace pbexact
