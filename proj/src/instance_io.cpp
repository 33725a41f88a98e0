#include "pbexact/instance_io.hpp"

#include "pbexact/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pbexact {

using Json = nlohmann::json;

const Election& ParsedInstance::election() const {
  if (ranked())
    throw InputError("this operation needs cardinal ballots but the instance is ranked");
  return std::get<Election>(value);
}

const RankedElection& ParsedInstance::ranked_election() const {
  if (!ranked())
    throw InputError("this operation needs ranked ballots but the instance is cardinal");
  return std::get<RankedElection>(value);
}

namespace {

Rat parse_money(const Json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const InputError& err) {
      throw InputError(field + ": " + err.what());
    }
  }
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_unsigned()) return Rat(v.get<unsigned long long>());
  throw InputError(field + ": expected an integer or a \"p/q\" string, got " + v.dump());
}

std::string id_string(const Json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  throw InputError(field + ": expected a string or integer id, got " + v.dump());
}

// candidate mention inside ballots: a known id, or an index fallback
int resolve_candidate(const Json& token, const std::map<std::string, int>& index,
                      int m, const std::string& field) {
  if (token.is_string() || token.is_number_integer() || token.is_number_unsigned()) {
    const std::string name = id_string(token, field);
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (!token.is_string()) {
      const long long raw = token.get<long long>();
      if (raw >= 1 && raw <= m) return static_cast<int>(raw);
    }
  }
  throw InputError(field + ": unknown candidate " + token.dump());
}

const Json& require(const Json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

} // namespace

ParsedInstance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string("malformed JSON: ") + err.what());
  }
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");

  const Json& version = require(doc, "format_version", "document");
  if (!version.is_number_integer() || version.get<long long>() != 1)
    throw InputError("format_version: expected 1, got " + version.dump());

  const Rat budget = parse_money(require(doc, "budget", "document"), "budget");
  if (budget <= 0) throw InputError("budget: must be positive");

  const Json& cand_arr = require(doc, "candidates", "document");
  if (!cand_arr.is_array() || cand_arr.empty())
    throw InputError("candidates: expected a non-empty array");
  const int m = static_cast<int>(cand_arr.size());

  std::vector<std::pair<std::string, Rat>> candidates;
  std::vector<std::string> names(1);
  std::map<std::string, int> index;
  for (int j = 0; j < m; ++j) {
    const std::string field = "candidates[" + std::to_string(j) + "]";
    const Json& entry = cand_arr[j];
    if (!entry.is_object()) throw InputError(field + ": expected an object");
    const std::string id = id_string(require(entry, "id", field), field + ".id");
    const Rat cost = parse_money(require(entry, "cost", field), field + ".cost");
    if (cost <= 0) throw InputError(field + ".cost: must be positive");
    if (cost > budget)
      throw InputError(field + ".cost: " + format_rat(cost) +
                       " exceeds the budget " + format_rat(budget));
    if (!index.emplace(id, j + 1).second)
      throw InputError(field + ".id: duplicate id \"" + id + "\"");
    candidates.emplace_back(id, cost / budget);
    names.push_back(id);
  }

  const Json& voter_arr = require(doc, "voters", "document");
  if (!voter_arr.is_array() || voter_arr.empty())
    throw InputError("voters: expected a non-empty array");
  const int n = static_cast<int>(voter_arr.size());

  std::string mode;
  std::set<std::string> voter_ids;
  std::vector<std::vector<std::pair<int, Rat>>> rows;
  std::vector<std::vector<int>> rankings;
  for (int i = 0; i < n; ++i) {
    const std::string field = "voters[" + std::to_string(i) + "]";
    const Json& entry = voter_arr[i];
    if (!entry.is_object()) throw InputError(field + ": expected an object");
    if (!voter_ids.insert(require(entry, "id", field).dump()).second)
      throw InputError(field + ".id: duplicate id " + entry["id"].dump());

    std::string kind;
    for (const char* key : {"approves", "utilities", "ranking"})
      if (entry.contains(key)) {
        if (!kind.empty())
          throw InputError(field + ": carries both \"" + kind + "\" and \"" + key + "\"");
        kind = key;
      }
    if (kind.empty())
      throw InputError(field + ": needs one of \"approves\", \"utilities\", \"ranking\"");
    if (mode.empty())
      mode = kind;
    else if (mode != kind)
      throw InputError(field + ": ballot kind \"" + kind +
                       "\" differs from the document's \"" + mode + "\"");

    const Json& ballot = entry[kind];
    if (kind == "approves") {
      if (!ballot.is_array()) throw InputError(field + ".approves: expected an array");
      std::vector<std::pair<int, Rat>> row;
      for (const Json& token : ballot)
        row.emplace_back(resolve_candidate(token, index, m, field + ".approves"), Rat(1));
      rows.push_back(std::move(row));
    } else if (kind == "utilities") {
      if (!ballot.is_object()) throw InputError(field + ".utilities: expected an object");
      std::vector<std::pair<int, Rat>> row;
      for (const auto& [key, val] : ballot.items()) {
        auto it = index.find(key);
        if (it == index.end())
          throw InputError(field + ".utilities: unknown candidate \"" + key + "\"");
        row.emplace_back(it->second, parse_money(val, field + ".utilities." + key));
      }
      rows.push_back(std::move(row));
    } else {
      if (!ballot.is_array()) throw InputError(field + ".ranking: expected an array");
      std::vector<int> order;
      for (const Json& token : ballot)
        order.push_back(resolve_candidate(token, index, m, field + ".ranking"));
      rankings.push_back(std::move(order));
    }
  }

  ParsedInstance parsed;
  parsed.names = std::move(names);
  if (mode == "ranking") {
    for (int j = 1; j < m; ++j)
      if (candidates[j].second != candidates[0].second)
        throw InputError("candidates: ranked ballots need one uniform cost, got " +
                         format_rat(candidates[0].second) + " and " +
                         format_rat(candidates[j].second));
    const Rat seats = Rat(1) / candidates[0].second;
    if (denominator(seats) != 1 || numerator(seats) > 1000000)
      throw InputError("candidates: uniform cost " + format_rat(candidates[0].second) +
                       " is not budget/k for a reasonable integer k");
    const int k = static_cast<int>(numerator(seats).convert_to<long long>());
    parsed.value = make_ranked_election(n, m, k, std::move(rankings));
  } else {
    parsed.value = make_election(n, std::move(candidates), std::move(rows));
  }
  return parsed;
}

namespace {

Json meta_or_throw(const std::string& meta_json) {
  if (meta_json.empty()) return Json();
  try {
    return Json::parse(meta_json);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string("meta: malformed JSON: ") + err.what());
  }
}

std::string dump_doc(const Json& doc) { return doc.dump(2) + "\n"; }

Json name_list(const std::vector<int>& ids, const std::vector<std::string>& names) {
  Json arr = Json::array();
  for (int c : ids) arr.push_back(names[c]);
  return arr;
}

} // namespace

std::string serialize_instance(const Election& e, const std::string& meta_json) {
  Json doc;
  doc["format_version"] = 1;
  doc["budget"] = "1";
  Json cand_arr = Json::array();
  for (int c = 1; c <= e.num_candidates(); ++c)
    cand_arr.push_back({{"cost", format_rat(e.cost[c])}, {"id", e.name[c]}});
  doc["candidates"] = std::move(cand_arr);

  const bool approval = classify(e).approval;
  Json voter_arr = Json::array();
  for (int i = 1; i <= e.n; ++i) {
    Json entry;
    entry["id"] = i;
    if (approval) {
      Json row = Json::array();
      for (const auto& [c, u] : e.utils[i]) row.push_back(e.name[c]);
      entry["approves"] = std::move(row);
    } else {
      Json row = Json::object();
      for (const auto& [c, u] : e.utils[i]) row[e.name[c]] = format_rat(u);
      entry["utilities"] = std::move(row);
    }
    voter_arr.push_back(std::move(entry));
  }
  doc["voters"] = std::move(voter_arr);
  const Json meta = meta_or_throw(meta_json);
  if (!meta.is_null()) doc["meta"] = meta;
  return dump_doc(doc);
}

std::string serialize_instance(const RankedElection& re,
                               const std::vector<std::string>& names,
                               const std::string& meta_json) {
  std::vector<std::string> ids = names;
  if (ids.empty()) {
    ids.resize(re.m + 1);
    for (int c = 1; c <= re.m; ++c) ids[c] = "c" + std::to_string(c);
  }
  Json doc;
  doc["format_version"] = 1;
  doc["budget"] = "1";
  Json cand_arr = Json::array();
  for (int c = 1; c <= re.m; ++c)
    cand_arr.push_back({{"cost", format_rat(rat(1, re.k))}, {"id", ids[c]}});
  doc["candidates"] = std::move(cand_arr);
  Json voter_arr = Json::array();
  for (int i = 1; i <= re.n; ++i) {
    Json entry;
    entry["id"] = i;
    entry["ranking"] = name_list(re.rankings[i], ids);
    voter_arr.push_back(std::move(entry));
  }
  doc["voters"] = std::move(voter_arr);
  const Json meta = meta_or_throw(meta_json);
  if (!meta.is_null()) doc["meta"] = meta;
  return dump_doc(doc);
}

namespace {

int resolve_name(const std::string& token, const std::vector<std::string>& names) {
  const int m = static_cast<int>(names.size()) - 1;
  for (int c = 1; c <= m; ++c)
    if (names[c] == token) return c;
  try {
    size_t used = 0;
    const int raw = std::stoi(token, &used);
    if (used == token.size() && raw >= 1 && raw <= m) return raw;
  } catch (const std::exception&) {
  }
  throw InputError("unknown candidate \"" + token + "\"");
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  size_t b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

} // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Outcome parse_outcome_arg(const std::string& arg,
                          const std::vector<std::string>& names) {
  std::vector<int> ids;
  if (arg.rfind("outcome:", 0) == 0) {
    std::string body = trim(arg.substr(8));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
      throw InputError("inline outcome must look like outcome:{a, b}");
    body = body.substr(1, body.size() - 2);
    std::stringstream split(body);
    std::string token;
    while (std::getline(split, token, ',')) {
      token = trim(token);
      if (!token.empty()) ids.push_back(resolve_name(token, names));
    }
  } else {
    Json doc;
    try {
      doc = Json::parse(read_text_file(arg));
    } catch (const Json::parse_error& err) {
      throw InputError(arg + ": malformed JSON: " + err.what());
    }
    const Json* list = nullptr;
    if (doc.is_array())
      list = &doc;
    else if (doc.is_object() && doc.contains("outcome"))
      list = &doc["outcome"];
    else if (doc.is_object() && doc.contains("selected"))
      list = &doc["selected"];
    if (list == nullptr || !list->is_array())
      throw InputError(arg + ": expected an \"outcome\" or \"selected\" array");
    for (const Json& token : *list) {
      if (token.is_string())
        ids.push_back(resolve_name(token.get<std::string>(), names));
      else if (token.is_number_integer() || token.is_number_unsigned())
        ids.push_back(resolve_name(token.dump(), names));
      else
        throw InputError(arg + ": bad outcome entry " + token.dump());
    }
  }
  return make_outcome(std::move(ids));
}

namespace {

Json ledger_json(const PaymentLedger& ledger, const std::vector<std::string>& names) {
  Json out;
  out["b"] = format_rat(ledger.share * ledger.n);
  out["share"] = format_rat(ledger.share);
  Json pay_arr = Json::array();
  Json rem_arr = Json::array();
  for (int i = 1; i <= ledger.n; ++i) {
    Json row = Json::object();
    for (const auto& [c, amount] : ledger.paid[i]) row[names[c]] = format_rat(amount);
    pay_arr.push_back(std::move(row));
    rem_arr.push_back(format_rat(ledger.remaining[i]));
  }
  out["payments"] = std::move(pay_arr);
  out["remaining"] = std::move(rem_arr);
  Json synth = Json::array();
  for (const auto& [voter, cand] : ledger.synthetic)
    synth.push_back(Json::array({voter, names[cand]}));
  out["synthetic"] = std::move(synth);
  return out;
}

std::string rho_kind_name(TraceStep::RhoKind kind) {
  switch (kind) {
    case TraceStep::RhoKind::PricePerUtility: return "price-per-utility";
    case TraceStep::RhoKind::Rank: return "rank";
    case TraceStep::RhoKind::Time: return "time";
  }
  return "price-per-utility";
}

} // namespace

std::string serialize_trace(const TraceFile& t) {
  Json doc;
  doc["format_version"] = 1;
  doc["rule"] = t.rule;
  doc["outcome"] = name_list(t.outcome.ids, t.names);
  doc["spent"] = format_rat(t.spent);
  if (t.trace) {
    Json steps = Json::array();
    for (const TraceStep& step : t.trace->steps) {
      Json s;
      s["candidate"] = t.names[step.candidate];
      s["rho"] = format_rat(step.rho);
      s["rho_kind"] = rho_kind_name(step.rho_kind);
      s["tie_set"] = name_list(step.tie_set, t.names);
      Json pays = Json::array();
      for (const auto& [voter, amount] : step.payments)
        pays.push_back(Json::array({voter, format_rat(amount)}));
      s["payments"] = std::move(pays);
      steps.push_back(std::move(s));
    }
    doc["steps"] = std::move(steps);
  }
  if (t.ledger) doc["ledger"] = ledger_json(*t.ledger, t.names);
  if (t.rounds) {
    Json rounds = Json::array();
    for (const CohesiveRound& round : *t.rounds) {
      Json r;
      r["beta"] = format_rat(round.beta);
      r["bundle"] = name_list(round.bundle, t.names);
      r["group"] = round.group;
      rounds.push_back(std::move(r));
    }
    doc["rounds"] = std::move(rounds);
  }
  if (t.eps) doc["eps"] = format_rat(*t.eps);
  return dump_doc(doc);
}

PriceSystem parse_price_system(const std::string& text, int n,
                               const std::vector<std::string>& names) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string("malformed JSON: ") + err.what());
  }
  if (!doc.is_object())
    throw InputError("price system document must be a JSON object");
  const Json& src = doc.contains("ledger") ? doc["ledger"] : doc;
  if (!src.contains("b") || !src.contains("payments"))
    throw InputError("price system needs \"b\" and \"payments\"");
  PriceSystem ps;
  ps.b = parse_money(src["b"], "b");
  const Json& pay = src["payments"];
  if (!pay.is_array() || static_cast<int>(pay.size()) != n)
    throw InputError("payments: expected one entry per voter (" + std::to_string(n) + ")");
  ps.payments.resize(n + 1);
  for (int i = 1; i <= n; ++i) {
    const Json& row = pay[i - 1];
    if (!row.is_object())
      throw InputError("payments[" + std::to_string(i - 1) + "]: expected an object");
    for (const auto& [key, val] : row.items())
      ps.payments[i][resolve_name(key, names)] =
          parse_money(val, "payments[" + std::to_string(i - 1) + "]." + key);
  }
  return ps;
}

std::string serialize_price_system(const PriceSystem& ps,
                                   const std::vector<std::string>& names) {
  Json doc;
  doc["b"] = format_rat(ps.b);
  Json pay = Json::array();
  for (size_t i = 1; i < ps.payments.size(); ++i) {
    Json row = Json::object();
    for (const auto& [c, amount] : ps.payments[i]) row[names[c]] = format_rat(amount);
    pay.push_back(std::move(row));
  }
  doc["payments"] = std::move(pay);
  return dump_doc(doc);
}

std::string serialize_verdict(const std::string& axiom, const AxiomVerdict& v,
                              const std::vector<std::string>& names) {
  Json doc;
  doc["axiom"] = axiom;
  switch (v.status) {
    case VerdictStatus::Satisfied: doc["status"] = "satisfied"; break;
    case VerdictStatus::Violated: doc["status"] = "violated"; break;
    case VerdictStatus::Inconclusive: doc["status"] = "inconclusive"; break;
  }
  if (!v.note.empty()) doc["note"] = v.note;
  if (v.witness) {
    const ViolationWitness& w = *v.witness;
    Json out;
    if (!w.group.empty()) out["group"] = w.group;
    if (!w.bundle.empty()) out["bundle"] = name_list(w.bundle, names);
    if (!w.floors.empty()) {
      Json floors = Json::array();
      for (const auto& [c, level] : w.floors)
        floors.push_back(Json::array({names[c], format_rat(level)}));
      out["floors"] = std::move(floors);
    }
    if (w.beta) out["beta"] = format_rat(*w.beta);
    if (w.threshold) out["threshold"] = format_rat(*w.threshold);
    if (w.candidate) out["candidate"] = names[*w.candidate];
    if (w.voter) out["voter"] = *w.voter;
    if (w.entitlement) out["entitlement"] = w.entitlement->str();
    if (!w.condition.empty()) out["condition"] = w.condition;
    doc["witness"] = std::move(out);
  }
  return dump_doc(doc);
}

} // namespace pbexact
