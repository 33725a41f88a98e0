#include "pbexact/ordinal.hpp"

#include "pbexact/errors.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pbexact {

RankedElection make_ranked_election(int n, int m, int k,
                                    std::vector<std::vector<int>> rankings) {
  if (n < 1) throw InputError("ranked election needs at least one voter");
  if (m < 1) throw InputError("ranked election needs at least one candidate");
  if (k < 1 || k > m)
    throw InputError("committee size " + std::to_string(k) +
                     " outside [1, " + std::to_string(m) + "]");
  if (static_cast<int>(rankings.size()) != n)
    throw InputError("expected one ranking per voter");
  RankedElection re;
  re.n = n;
  re.m = m;
  re.k = k;
  re.rankings.resize(n + 1);
  re.pos.assign(n + 1, std::vector<int>(m + 1, 0));
  for (int i = 1; i <= n; ++i) {
    auto& order = rankings[i - 1];
    if (static_cast<int>(order.size()) != m)
      throw InputError("ranking of voter " + std::to_string(i) +
                       " must list all " + std::to_string(m) + " candidates");
    for (int p = 0; p < m; ++p) {
      const int c = order[p];
      if (c < 1 || c > m)
        throw InputError("ranking of voter " + std::to_string(i) +
                         " mentions unknown candidate " + std::to_string(c));
      if (re.pos[i][c] != 0)
        throw InputError("ranking of voter " + std::to_string(i) +
                         " repeats candidate " + std::to_string(c));
      re.pos[i][c] = p + 1;
    }
    re.rankings[i] = std::move(order);
  }
  return re;
}

namespace {

// threshold tau with sum over supporters of min(remaining, tau) = price;
// exists whenever the supporters' remaining budgets cover the price
Rat water_fill_threshold(const std::vector<Rat>& budgets, const Rat& price) {
  std::vector<Rat> sorted = budgets;
  std::sort(sorted.begin(), sorted.end());
  const int s = static_cast<int>(sorted.size());
  Rat prefix;
  for (int j = 0; j < s; ++j) {
    // first j budgets pay in full, the rest pay tau
    Rat tau = (price - prefix) / (s - j);
    if (tau <= sorted[j] && (j == 0 || sorted[j - 1] <= tau)) return tau;
    prefix += sorted[j];
  }
  throw InternalError("water filling cannot cover the price");
}

} // namespace

RuleXResult run_rule_x_lex(const RankedElection& re, TieBreak tie_break) {
  (void)tie_break; // costs are uniform, so both policies pick the lowest index
  const int n = re.n;
  const int m = re.m;
  const Rat price = rat(1, re.k);

  RuleXResult result;
  PaymentLedger& ledger = result.ledger;
  ledger.n = n;
  ledger.share = rat(1, n);
  ledger.paid.resize(n + 1);
  ledger.remaining.assign(n + 1, ledger.share);
  ledger.remaining[0] = 0;

  std::vector<char> elected(m + 1, 0);
  std::vector<int> chosen;
  while (static_cast<int>(chosen.size()) < re.k) {
    int winner = 0;
    int winner_rank = 0;
    std::vector<int> tie_set;
    for (int rho = 1; rho <= m && winner == 0; ++rho) {
      for (int c = 1; c <= m; ++c) {
        if (elected[c]) continue;
        Rat pooled;
        for (int i = 1; i <= n; ++i)
          if (re.pos[i][c] <= rho) pooled += ledger.remaining[i];
        if (pooled >= price) tie_set.push_back(c);
      }
      if (!tie_set.empty()) {
        winner = tie_set.front();
        winner_rank = rho;
      }
    }
    if (winner == 0) break;

    std::vector<int> supporters;
    std::vector<Rat> budgets;
    for (int i = 1; i <= n; ++i)
      if (re.pos[i][winner] <= winner_rank) {
        supporters.push_back(i);
        budgets.push_back(ledger.remaining[i]);
      }
    const Rat tau = water_fill_threshold(budgets, price);

    TraceStep step;
    step.candidate = winner;
    step.rho = Rat(winner_rank);
    step.rho_kind = TraceStep::RhoKind::Rank;
    step.tie_set = tie_set;
    Rat charged;
    for (size_t j = 0; j < supporters.size(); ++j) {
      const Rat amount = std::min(budgets[j], tau);
      if (amount == 0) continue;
      ledger.charge(supporters[j], winner, amount);
      step.payments.emplace_back(supporters[j], amount);
      charged += amount;
    }
    if (charged != price) throw InternalError("lex payments do not match the price");
    result.trace.steps.push_back(std::move(step));
    elected[winner] = 1;
    chosen.push_back(winner);
  }
  result.outcome = make_outcome(std::move(chosen));
  return result;
}

Election to_cardinal(const RankedElection& re, UtilityScheme scheme) {
  std::vector<std::pair<std::string, Rat>> candidates(re.m, {"", rat(1, re.k)});
  std::vector<std::vector<std::pair<int, Rat>>> utilities(re.n);
  for (int i = 1; i <= re.n; ++i)
    for (int c = 1; c <= re.m; ++c) {
      const int p = re.pos[i][c];
      Rat u;
      if (re.m == 1)
        u = 1;
      else if (scheme == UtilityScheme::LexExponential)
        u = Rat(1) / Rat(pow(BigInt(re.m), p));
      else
        u = rat(re.m - p, re.m - 1);
      if (u != 0) utilities[i - 1].emplace_back(c, std::move(u));
    }
  return make_election(re.n, std::move(candidates), std::move(utilities));
}

AxiomVerdict check_psc(const RankedElection& re, const Outcome& w) {
  if (w.size() > re.k)
    throw InputError("outcome has " + std::to_string(w.size()) +
                     " candidates but only " + std::to_string(re.k) + " seats");
  for (int c : w.ids)
    if (c < 1 || c > re.m)
      throw InputError("candidate id out of range: " + std::to_string(c));

  // rank prefixes grow one candidate at a time; scan by length then lex
  std::vector<std::vector<int>> prefix(re.n + 1);
  for (int len = 1; len <= re.m; ++len) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int i = 1; i <= re.n; ++i) {
      auto& t = prefix[i];
      t.insert(std::lower_bound(t.begin(), t.end(), re.rankings[i][len - 1]),
               re.rankings[i][len - 1]);
      groups[t].push_back(i);
    }
    for (const auto& [t, voters] : groups) {
      const long long quota =
          static_cast<long long>(voters.size()) * re.k / re.n;
      const long long owed = std::min<long long>(quota, len);
      if (owed == 0) continue;
      long long have = 0;
      for (int c : t)
        if (w.contains(c)) ++have;
      if (have < owed) {
        ViolationWitness witness;
        witness.group = voters;
        witness.bundle = t;
        witness.entitlement = BigInt(quota);
        AxiomVerdict verdict;
        verdict.status = VerdictStatus::Violated;
        verdict.witness = std::move(witness);
        verdict.note = "a solid coalition of " + std::to_string(voters.size()) +
                       " voters is owed " + std::to_string(owed) +
                       " of its top " + std::to_string(len) + " candidates";
        return verdict;
      }
    }
  }
  return {};
}

} // namespace pbexact
