#include "pbexact/phragmen.hpp"

#include "pbexact/errors.hpp"

#include <algorithm>
#include <vector>

namespace pbexact {

PhragmenResult run_phragmen(const Election& e, TieBreak tb, bool skip_unaffordable) {
  if (!classify(e).approval)
    throw InputError("the continuous clock rule needs 0/1 utilities");

  VoterBlocks blocks = voter_blocks(e);
  int m = e.num_candidates();
  // approvers of each candidate, as blocks (identical rows share balances)
  std::vector<std::vector<int>> fans(m + 1);
  std::vector<long long> fan_count(m + 1, 0);
  for (int b = 0; b < blocks.count(); ++b)
    for (const auto& [c, u] : e.utils[blocks.members[b].front()]) {
      fans[c].push_back(b);
      fan_count[c] += (long long)blocks.members[b].size();
    }

  std::vector<Rat> bal(blocks.count(), Rat(0)); // per-voter balance, by block
  std::vector<char> done(m + 1, 0);             // elected or dropped
  Rat t_now(0), spent(0);
  std::vector<int> elected;
  RuleTrace trace;

  while (true) {
    // earliest firing time among live candidates
    std::vector<int> tie;
    Rat t_best;
    for (int c = 1; c <= m; ++c) {
      if (done[c]) continue;
      Rat have(0);
      for (int b : fans[c]) have += bal[b] * (long long)blocks.members[b].size();
      Rat need = e.cost[c] - have;
      Rat t_c = need <= 0 ? t_now : t_now + need * e.n / fan_count[c];
      if (tie.empty() || t_c < t_best) {
        t_best = t_c;
        tie = {c};
      } else if (t_c == t_best) {
        tie.push_back(c);
      }
    }
    if (tie.empty()) break;
    int winner = tie.front();
    if (tb == TieBreak::MinCostThenIndex)
      for (int c : tie)
        if (e.cost[c] < e.cost[winner]) winner = c;

    if (spent + e.cost[winner] > 1) {
      if (!skip_unaffordable) break;
      done[winner] = 1; // drop and let the clock keep running
      continue;
    }

    Rat dt = t_best - t_now;
    for (Rat& x : bal) x += dt / e.n;
    t_now = t_best;

    TraceStep step;
    step.candidate = winner;
    step.rho = t_now;
    step.rho_kind = TraceStep::RhoKind::Time;
    step.tie_set = tie;
    Rat consumed(0);
    for (int b : fans[winner]) {
      if (bal[b] == 0) continue;
      for (int v : blocks.members[b]) step.payments.emplace_back(v, bal[b]);
      consumed += bal[b] * (long long)blocks.members[b].size();
      bal[b] = 0;
    }
    if (consumed != e.cost[winner])
      throw InternalError("firing balance does not match the cost");
    std::sort(step.payments.begin(), step.payments.end());
    trace.steps.push_back(std::move(step));

    done[winner] = 1;
    spent += e.cost[winner];
    elected.push_back(winner);
  }

  return PhragmenResult{make_outcome(std::move(elected)), std::move(trace)};
}

} // namespace pbexact
