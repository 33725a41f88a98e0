#include "pbexact/equal_shares.hpp"
#include "pbexact/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace pbexact {

namespace {

struct Term {
  Rat rem;
  Rat u;
  long long mult;
};

// f(rho) = sum of mult * min(rem, u * rho) over terms, non-decreasing and
// piecewise linear with breakpoints rem/u. Returns the minimal rho with
// f(rho) = cost, absent iff f caps out below cost.
std::optional<Rat> min_rho_over_terms(std::vector<Term> terms, const Rat& cost) {
  std::erase_if(terms, [](const Term& t) { return t.rem == 0 || t.u == 0; });
  Rat total, slope;
  for (const auto& t : terms) {
    total += t.rem * t.mult;
    slope += t.u * t.mult;
  }
  if (total < cost) return std::nullopt;
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.rem * b.u < b.rem * a.u; // rem/u ascending, division-free
  });
  Rat capped;
  for (const auto& t : terms) {
    // on the segment ending at this term's breakpoint: f(rho) = capped + slope*rho
    Rat rho = (cost - capped) / slope;
    if (rho * t.u <= t.rem) return rho;
    capped += t.rem * t.mult;
    slope -= t.u * t.mult;
  }
  throw InternalError("min_rho segment scan fell through");
}

// Voters are processed in blocks with identical utility rows and identical
// remaining budget; such voters stay interchangeable for the whole run.
struct BlockRun {
  const Election* e = nullptr;
  std::vector<std::vector<int>> members; // partition of 1..n
  std::vector<Rat> rem;                  // per block
  std::vector<std::vector<std::pair<int, Rat>>> supporters; // [cand] -> (block, u)

  void index_supporters() {
    supporters.assign(e->num_candidates() + 1, {});
    for (size_t b = 0; b < members.size(); ++b)
      for (const auto& [c, u] : e->utils[members[b][0]])
        supporters[c].emplace_back(static_cast<int>(b), u);
  }

  std::optional<Rat> candidate_rho(int cand) const {
    std::vector<Term> terms;
    terms.reserve(supporters[cand].size());
    for (const auto& [b, u] : supporters[cand])
      if (rem[b] > 0)
        terms.push_back({rem[b], u, static_cast<long long>(members[b].size())});
    return min_rho_over_terms(std::move(terms), e->cost[cand]);
  }
};

BlockRun fresh_block_run(const Election& e, const Rat& share) {
  BlockRun run;
  run.e = &e;
  run.members = voter_blocks(e).members;
  run.rem.assign(run.members.size(), share);
  run.index_supporters();
  return run;
}

int pick_winner(const Election& e, const std::vector<int>& tie, TieBreak tb) {
  int winner = tie.front(); // tie is ascending, so front is the lowest index
  if (tb == TieBreak::MinCostThenIndex)
    for (int c : tie)
      if (e.cost[c] < e.cost[winner]) winner = c;
  return winner;
}

// One election step: charge every supporter min(rem, u*rho), record the
// trace step, mark the winner elected.
void apply_step(BlockRun& run, int winner, const Rat& rho, std::vector<int> tie,
                PaymentLedger& ledger, RuleTrace& trace, std::vector<char>& elected,
                std::vector<int>& outcome_ids, const Election* flag_zero_against) {
  const Election& e = *run.e;
  TraceStep step;
  step.candidate = winner;
  step.rho = rho;
  step.tie_set = std::move(tie);
  Rat charged_total;
  for (const auto& [b, u] : run.supporters[winner]) {
    if (run.rem[b] == 0) continue;
    Rat pay = u * rho;
    if (pay > run.rem[b]) pay = run.rem[b];
    charged_total += pay * static_cast<long long>(run.members[b].size());
    run.rem[b] -= pay;
    bool synth = flag_zero_against &&
                 flag_zero_against->utility(run.members[b][0], winner) == 0;
    for (int voter : run.members[b]) {
      ledger.charge(voter, winner, pay, synth);
      step.payments.emplace_back(voter, pay);
    }
  }
  if (charged_total != e.cost[winner])
    throw InternalError("payments for " + e.candidate_name(winner) +
                        " do not sum to its cost");
  std::sort(step.payments.begin(), step.payments.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  elected[winner] = 1;
  outcome_ids.push_back(winner);
  trace.steps.push_back(std::move(step));
}

RuleXResult run_loop(const Election& e, TieBreak tb, BlockRun run, Outcome start,
                     PaymentLedger ledger, const Election* flag_zero_against) {
  const int m = e.num_candidates();
  std::vector<char> elected(m + 1, 0);
  for (int c : start.ids) elected[c] = 1;
  std::vector<int> outcome_ids = start.ids;
  RuleTrace trace;
  while (true) {
    std::optional<Rat> best;
    std::vector<int> tie;
    for (int c = 1; c <= m; ++c) {
      if (elected[c]) continue;
      auto rho = run.candidate_rho(c);
      if (!rho) continue;
      if (!best || *rho < *best) {
        best = std::move(*rho);
        tie.assign(1, c);
      } else if (*rho == *best) {
        tie.push_back(c);
      }
    }
    if (!best) break;
    int winner = pick_winner(e, tie, tb);
    apply_step(run, winner, *best, std::move(tie), ledger, trace, elected,
               outcome_ids, flag_zero_against);
  }
  return {make_outcome(std::move(outcome_ids)), std::move(ledger), std::move(trace)};
}

Rat min_positive_utility(const Election& e) {
  Rat best;
  bool found = false;
  for (int i = 1; i <= e.n; ++i)
    for (const auto& [c, u] : e.utils[i])
      if (!found || u < best) {
        best = u;
        found = true;
      }
  if (!found) throw InternalError("election without utilities");
  return best;
}

bool has_zero_utility_pair(const Election& e) {
  for (int i = 1; i <= e.n; ++i)
    if (static_cast<int>(e.utils[i].size()) < e.num_candidates()) return true;
  return false;
}

Election perturbed_election(const Election& e, const Rat& eps) {
  const int m = e.num_candidates();
  std::vector<std::pair<std::string, Rat>> candidates;
  for (int c = 1; c <= m; ++c) candidates.emplace_back(e.name[c], e.cost[c]);
  std::vector<std::vector<std::pair<int, Rat>>> utilities(e.n);
  for (int i = 1; i <= e.n; ++i) {
    auto& row = utilities[i - 1];
    auto it = e.utils[i].begin();
    for (int c = 1; c <= m; ++c) {
      if (it != e.utils[i].end() && it->first == c) {
        row.emplace_back(c, it->second);
        ++it;
      } else {
        row.emplace_back(c, eps);
      }
    }
  }
  return make_election(e.n, std::move(candidates), std::move(utilities));
}

std::vector<int> election_sequence(const RuleTrace& trace) {
  std::vector<int> seq;
  for (const auto& step : trace.steps) seq.push_back(step.candidate);
  return seq;
}

std::string sequence_to_string(const Election& e, const std::vector<int>& seq) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < seq.size(); ++i)
    out << (i ? ", " : "") << e.candidate_name(seq[i]);
  out << "]";
  return out.str();
}

} // namespace

std::optional<Rat> min_rho(int cand, const PaymentLedger& ledger, const Election& e) {
  e.check_candidate(cand);
  std::vector<Term> terms;
  for (int i = 1; i <= e.n; ++i) {
    Rat u = e.utility(i, cand);
    if (u > 0 && ledger.remaining[i] > 0) terms.push_back({ledger.remaining[i], u, 1});
  }
  return min_rho_over_terms(std::move(terms), e.cost[cand]);
}

RuleXResult run_rule_x(const Election& e, TieBreak tb) {
  PaymentLedger ledger = PaymentLedger::fresh(e);
  return run_loop(e, tb, fresh_block_run(e, ledger.share), Outcome{}, std::move(ledger),
                  nullptr);
}

RuleXResult run_rule_x_eps(const Election& e, const Rat& eps, TieBreak tb) {
  if (e.num_candidates() == 0) return run_rule_x(e, tb);
  if (eps <= 0 || eps >= min_positive_utility(e))
    throw InputError("eps must lie strictly between 0 and the smallest positive utility");
  Election perturbed = perturbed_election(e, eps);
  PaymentLedger ledger = PaymentLedger::fresh(perturbed);
  RuleXResult result = run_loop(perturbed, tb, fresh_block_run(perturbed, ledger.share),
                                Outcome{}, std::move(ledger), &e);
  return result;
}

ExhaustiveRuleXResult run_rule_x_exhaustive(const Election& e, TieBreak tb,
                                            int max_halvings) {
  const int m = e.num_candidates();
  Rat eps0(1);
  if (m > 0) {
    BigInt cost_lcm = 1;
    for (int c = 1; c <= m; ++c)
      cost_lcm = boost::multiprecision::lcm(
          cost_lcm, boost::multiprecision::denominator(e.cost[c]));
    eps0 = min_positive_utility(e) / (Rat(e.n) * m * Rat(cost_lcm));
  }
  if (!has_zero_utility_pair(e)) {
    RuleXResult plain = run_rule_x(e, tb);
    return {std::move(plain.outcome), std::move(plain.ledger), std::move(plain.trace),
            eps0};
  }
  Rat eps = eps0;
  RuleXResult prev = run_rule_x_eps(e, eps, tb);
  std::vector<int> prev_seq = election_sequence(prev.trace);
  for (int halving = 0; halving < max_halvings; ++halving) {
    Rat next_eps = eps / 2;
    RuleXResult cur = run_rule_x_eps(e, next_eps, tb);
    std::vector<int> cur_seq = election_sequence(cur.trace);
    if (cur_seq == prev_seq)
      return {std::move(prev.outcome), std::move(prev.ledger), std::move(prev.trace),
              eps};
    prev = std::move(cur);
    prev_seq = std::move(cur_seq);
    eps = next_eps;
  }
  RuleXResult last = run_rule_x_eps(e, eps / 2, tb);
  throw BoundExceeded("perturbed runs did not stabilize within " +
                      std::to_string(max_halvings) + " halvings; last sequences " +
                      sequence_to_string(e, prev_seq) + " vs " +
                      sequence_to_string(e, election_sequence(last.trace)));
}

RuleXResult resume_rule_x(const Election& e, const Outcome& start, PaymentLedger ledger,
                          TieBreak tb) {
  if (ledger.n != e.n) throw InputError("ledger does not match the election");
  for (int c : start.ids) e.check_candidate(c);
  // refine the utility-row blocks by remaining budget so block members stay
  // interchangeable despite uneven payments made before the resume point
  VoterBlocks base = voter_blocks(e);
  std::map<std::pair<int, Rat>, int> refined;
  BlockRun run;
  run.e = &e;
  for (int i = 1; i <= e.n; ++i) {
    if (ledger.remaining[i] < 0) throw InputError("negative remaining budget in ledger");
    auto key = std::make_pair(base.block_of[i], ledger.remaining[i]);
    auto [it, inserted] = refined.try_emplace(key, static_cast<int>(run.members.size()));
    if (inserted) {
      run.members.emplace_back();
      run.rem.push_back(ledger.remaining[i]);
    }
    run.members[it->second].push_back(i);
  }
  run.index_supporters();
  return run_loop(e, tb, std::move(run), start, std::move(ledger), nullptr);
}

std::vector<Outcome> run_rule_x_all_ties(const Election& e, size_t max_states) {
  BlockRun initial = fresh_block_run(e, Rat(1) / e.n);
  const int m = e.num_candidates();

  std::set<std::pair<std::vector<int>, std::vector<Rat>>> seen;
  std::set<Outcome> outcomes;
  size_t visited = 0;

  struct Frame {
    BlockRun run;
    std::vector<int> elected_ids;
  };

  auto recurse = [&](auto&& self, Frame frame) -> void {
    if (++visited > max_states)
      throw BoundExceeded("tie enumeration exceeded " + std::to_string(max_states) +
                          " states");
    auto key = std::make_pair(frame.elected_ids, frame.run.rem);
    if (!seen.insert(std::move(key)).second) return;

    std::optional<Rat> best;
    std::vector<int> tie;
    std::vector<char> elected(m + 1, 0);
    for (int c : frame.elected_ids) elected[c] = 1;
    for (int c = 1; c <= m; ++c) {
      if (elected[c]) continue;
      auto rho = frame.run.candidate_rho(c);
      if (!rho) continue;
      if (!best || *rho < *best) {
        best = std::move(*rho);
        tie.assign(1, c);
      } else if (*rho == *best) {
        tie.push_back(c);
      }
    }
    if (!best) {
      outcomes.insert(make_outcome(frame.elected_ids));
      return;
    }
    for (int winner : tie) {
      Frame next = frame;
      for (const auto& [b, u] : next.run.supporters[winner]) {
        if (next.run.rem[b] == 0) continue;
        Rat pay = u * *best;
        if (pay > next.run.rem[b]) pay = next.run.rem[b];
        next.run.rem[b] -= pay;
      }
      next.elected_ids.push_back(winner);
      std::sort(next.elected_ids.begin(), next.elected_ids.end());
      self(self, std::move(next));
    }
  };

  recurse(recurse, Frame{std::move(initial), {}});
  return {outcomes.begin(), outcomes.end()};
}

} // namespace pbexact
