#include "pbexact/gcr.hpp"

#include "pbexact/axioms.hpp"
#include "pbexact/equal_shares.hpp"
#include "pbexact/errors.hpp"
#include "pbexact/maxflow.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pbexact {

namespace {

struct BestBundle {
  Rat beta;
  Rat cost;
  std::vector<int> bundle;
};

// DFS over subsets of the remaining candidates, driven by per-block utility
// aggregates. u_in tracks u_b(I) for the current partial bundle I, u_all
// tracks u_b(I union undecided); the r_I-th largest of u_all bounds every
// completion's level, so subtrees that cannot beat the incumbent are cut.
struct BundleSearch {
  const Election& e;
  const std::vector<long long>& active_cnt; // per block
  const std::vector<std::vector<Rat>>& block_u; // [cand][block]
  BigInt active_total;
  std::vector<int> remaining;
  bool collect_ties = false;

  std::optional<BestBundle> best;
  std::vector<std::vector<int>> tied; // bundles sharing the best (beta, cost)

  std::vector<Rat> u_in, u_all;
  std::vector<int> cur;
  Rat cur_cost;

  std::optional<Rat> kth_largest(const std::vector<Rat>& vals, const BigInt& r) const {
    std::vector<std::pair<Rat, long long>> items;
    for (size_t b = 0; b < vals.size(); ++b)
      if (active_cnt[b] > 0) items.emplace_back(vals[b], active_cnt[b]);
    std::sort(items.begin(), items.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    BigInt cum = 0;
    for (const auto& [value, count] : items) {
      cum += count;
      if (cum >= r) return value;
    }
    return std::nullopt;
  }

  void evaluate() {
    BigInt r = rat_ceil(cur_cost * e.n);
    if (r > active_total) return;
    auto beta = kth_largest(u_in, r);
    if (!beta || *beta <= 0) return;
    if (!best) {
      best = BestBundle{*beta, cur_cost, cur};
      if (collect_ties) tied = {cur};
      return;
    }
    int cmp = 0;
    if (*beta != best->beta) cmp = (*beta > best->beta) ? 1 : -1;
    else if (cur_cost != best->cost) cmp = (cur_cost < best->cost) ? 1 : -1;
    if (cmp > 0) {
      best = BestBundle{*beta, cur_cost, cur};
      if (collect_ties) tied = {cur};
    } else if (cmp == 0) {
      if (collect_ties) tied.push_back(cur);
      if (cur < best->bundle) best->bundle = cur;
    }
  }

  void dfs(size_t idx) {
    // invariant: u_in = u(cur), u_all = u(cur union remaining[idx..])
    BigInt r_lo = rat_ceil(cur_cost * e.n);
    if (r_lo < 1) r_lo = 1;
    if (r_lo > active_total) return;
    auto bound = kth_largest(u_all, r_lo);
    if (!bound || *bound <= 0) return;
    if (best) {
      if (*bound < best->beta) return;
      // supersets of cur cost strictly more than cur_cost
      if (*bound == best->beta && cur_cost >= best->cost) return;
    }
    if (idx == remaining.size()) return;
    int c = remaining[idx];
    const std::vector<Rat>& uc = block_u[c];

    cur.push_back(c);
    cur_cost += e.cost[c];
    for (size_t b = 0; b < u_in.size(); ++b) u_in[b] += uc[b];
    evaluate();
    dfs(idx + 1);
    for (size_t b = 0; b < u_in.size(); ++b) u_in[b] -= uc[b];
    cur_cost -= e.cost[c];
    cur.pop_back();

    for (size_t b = 0; b < u_all.size(); ++b) u_all[b] -= uc[b];
    dfs(idx + 1);
    for (size_t b = 0; b < u_all.size(); ++b) u_all[b] += uc[b];
  }

  void run() {
    u_in.assign(active_cnt.size(), Rat(0));
    u_all.assign(active_cnt.size(), Rat(0));
    for (int c : remaining)
      for (size_t b = 0; b < u_all.size(); ++b) u_all[b] += block_u[c][b];
    cur.clear();
    cur_cost = 0;
    dfs(0);
    if (collect_ties) std::sort(tied.begin(), tied.end());
  }
};

struct GcrState {
  std::vector<std::vector<int>> active_members; // per block, ascending
  std::vector<long long> active_cnt;
  BigInt active_total;
  std::vector<int> remaining;
  std::vector<int> elected;
};

GcrState initial_state(const Election& e, const VoterBlocks& blocks) {
  GcrState s;
  s.active_members = blocks.members;
  s.active_cnt.reserve(blocks.count());
  for (const auto& members : blocks.members) s.active_cnt.push_back((long long)members.size());
  s.active_total = e.n;
  s.remaining.resize(e.num_candidates());
  for (int c = 1; c <= e.num_candidates(); ++c) s.remaining[c - 1] = c;
  return s;
}

std::vector<std::vector<Rat>> block_utilities(const Election& e, const VoterBlocks& blocks) {
  std::vector<std::vector<Rat>> block_u(e.num_candidates() + 1,
                                        std::vector<Rat>(blocks.count(), Rat(0)));
  for (int b = 0; b < blocks.count(); ++b) {
    int rep = blocks.members[b].front();
    for (const auto& [c, u] : e.utils[rep]) block_u[c][b] = u;
  }
  return block_u;
}

// The r voters with the largest bundle utility among the active ones, ties
// toward lower index. pre: beta is the r-th largest such utility.
std::vector<int> select_group(const GcrState& s, const std::vector<std::vector<Rat>>& block_u,
                              const std::vector<int>& bundle, const Rat& beta, BigInt r) {
  size_t nblocks = s.active_cnt.size();
  std::vector<Rat> vals(nblocks, Rat(0));
  for (int c : bundle)
    for (size_t b = 0; b < nblocks; ++b) vals[b] += block_u[c][b];
  std::vector<int> group;
  std::vector<int> boundary;
  BigInt need = r;
  for (size_t b = 0; b < nblocks; ++b) {
    if (s.active_cnt[b] == 0) continue;
    if (vals[b] > beta) {
      group.insert(group.end(), s.active_members[b].begin(), s.active_members[b].end());
      need -= s.active_cnt[b];
    } else if (vals[b] == beta) {
      boundary.insert(boundary.end(), s.active_members[b].begin(), s.active_members[b].end());
    }
  }
  if (need < 0 || need > (BigInt)boundary.size())
    throw InternalError("group selection does not match the claimed level");
  std::sort(boundary.begin(), boundary.end());
  long long take = need.convert_to<long long>();
  group.insert(group.end(), boundary.begin(), boundary.begin() + take);
  std::sort(group.begin(), group.end());
  return group;
}

void commit_round(GcrState& s, const VoterBlocks& blocks, const std::vector<int>& bundle,
                  const std::vector<int>& group) {
  for (int c : bundle) {
    auto it = std::find(s.remaining.begin(), s.remaining.end(), c);
    s.remaining.erase(it);
    s.elected.push_back(c);
  }
  for (int v : group) {
    int b = blocks.block_of[v];
    auto& members = s.active_members[b];
    members.erase(std::lower_bound(members.begin(), members.end(), v));
    --s.active_cnt[b];
    --s.active_total;
  }
}

void check_search_width(const Election& e, const GcrLimits& limits) {
  int m = e.num_candidates();
  if (m > limits.max_candidates)
    throw BoundExceeded("cohesive bundle search over " + std::to_string(m) +
                        " candidates exceeds the cap of " +
                        std::to_string(limits.max_candidates));
}

} // namespace

std::optional<std::pair<Rat, std::vector<int>>> best_beta_for_bundle(
    const std::vector<int>& bundle, const std::vector<int>& voters, const Election& e) {
  if (bundle.empty()) throw InputError("bundle must be non-empty");
  for (int c : bundle) e.check_candidate(c);
  for (int v : voters) e.check_voter(v);
  BigInt r = rat_ceil(total_cost(e, bundle) * e.n);
  if (r > (BigInt)voters.size()) return std::nullopt;
  std::vector<std::pair<Rat, int>> scored;
  scored.reserve(voters.size());
  for (int v : voters) scored.emplace_back(utility_of(e, v, bundle), v);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  long long take = r.convert_to<long long>();
  Rat beta = scored[take - 1].first;
  if (beta <= 0) return std::nullopt;
  std::vector<int> group;
  group.reserve(take);
  for (long long i = 0; i < take; ++i) group.push_back(scored[i].second);
  std::sort(group.begin(), group.end());
  return std::make_pair(beta, group);
}

GcrResult run_gcr(const Election& e, const GcrLimits& limits) {
  check_search_width(e, limits);
  VoterBlocks blocks = voter_blocks(e);
  auto block_u = block_utilities(e, blocks);
  GcrState s = initial_state(e, blocks);

  GcrResult out;
  while (!s.remaining.empty() && s.active_total > 0) {
    BundleSearch search{e, s.active_cnt, block_u, s.active_total, s.remaining};
    search.run();
    if (!search.best) break;
    const BestBundle& b = *search.best;
    BigInt r = rat_ceil(b.cost * e.n);
    std::vector<int> group = select_group(s, block_u, b.bundle, b.beta, r);
    out.rounds.push_back(CohesiveRound{b.beta, group, b.bundle});
    commit_round(s, blocks, b.bundle, group);
  }
  out.outcome = make_outcome(s.elected);
  if (total_cost(e, out.outcome) > 1)
    throw InternalError("cohesive rounds overspent the budget");
  return out;
}

std::vector<Outcome> run_gcr_all_ties(const Election& e, const GcrLimits& limits,
                                      size_t max_paths) {
  check_search_width(e, limits);
  VoterBlocks blocks = voter_blocks(e);
  auto block_u = block_utilities(e, blocks);
  std::set<Outcome> results;
  size_t paths = 0;

  auto rec = [&](auto&& self, const GcrState& s) -> void {
    if (++paths > max_paths)
      throw BoundExceeded("tie enumeration exceeded " + std::to_string(max_paths) + " paths");
    BundleSearch search{e, s.active_cnt, block_u, s.active_total, s.remaining, true};
    search.run();
    if (!search.best) {
      results.insert(make_outcome(s.elected));
      return;
    }
    for (const auto& bundle : search.tied) {
      BigInt r = rat_ceil(search.best->cost * e.n);
      GcrState child = s;
      std::vector<int> group = select_group(child, block_u, bundle, search.best->beta, r);
      commit_round(child, blocks, bundle, group);
      self(self, child);
    }
  };
  rec(rec, initial_state(e, blocks));
  return {results.begin(), results.end()};
}

PaymentLedger gcr_payment_construction(const std::vector<CohesiveRound>& rounds,
                                       const Election& e, const GcrLimits& limits) {
  PaymentLedger ledger = PaymentLedger::fresh(e);
  for (const CohesiveRound& round : rounds) {
    if (round.bundle.empty() || round.group.empty())
      throw InputError("cohesive round needs a non-empty bundle and group");
    for (int c : round.bundle) e.check_candidate(c);
    for (int v : round.group) e.check_voter(v);

    BigInt d(1);
    for (int c : round.bundle) d = lcm(d, denominator(e.cost[c]));
    std::vector<BigInt> parts(round.bundle.size());
    BigInt parts_total = 0;
    for (size_t j = 0; j < round.bundle.size(); ++j) {
      Rat scaled = e.cost[round.bundle[j]] * Rat(d);
      parts[j] = numerator(scaled);
      parts_total += parts[j];
    }
    BigInt pool = parts_total + BigInt((long long)round.group.size()) * d;
    if (pool > limits.node_budget)
      throw BoundExceeded("payment flow needs " + pool.str() +
                          " coin/part nodes (cost denominator lcm " + d.str() +
                          "), over the budget of " + std::to_string(limits.node_budget));

    int tcount = (int)round.bundle.size();
    int scount = (int)round.group.size();
    int source = 0, sink = 1 + tcount + scount;
    MaxFlow graph(sink + 1);
    BigInt dn = d * e.n;
    BigInt demand = 0;
    for (int j = 0; j < tcount; ++j) {
      graph.add_edge(source, 1 + j, parts[j] * e.n);
      demand += parts[j] * e.n;
    }
    std::vector<std::vector<std::pair<int, MaxFlow::EdgeRef>>> refs(tcount);
    for (int j = 0; j < tcount; ++j)
      for (int vi = 0; vi < scount; ++vi)
        if (e.utility(round.group[vi], round.bundle[j]) > 0)
          refs[j].emplace_back(vi, graph.add_edge(1 + j, 1 + tcount + vi, d));
    for (int vi = 0; vi < scount; ++vi)
      graph.add_edge(1 + tcount + vi, sink, d);

    if (graph.run(source, sink) != demand)
      throw InternalError("cohesive round cannot be financed by its own group");
    for (int j = 0; j < tcount; ++j)
      for (const auto& [vi, ref] : refs[j]) {
        BigInt q = graph.flow_on(ref);
        if (q > 0) ledger.charge(round.group[vi], round.bundle[j], Rat(q, dn));
      }
  }
  return ledger;
}

std::pair<Outcome, PaymentLedger> gcr_priceable_completion(const Election& e,
                                                           const Outcome& gcr_out,
                                                           const PaymentLedger& ledger) {
  PriceSystem ps = price_system_from_ledger(ledger);
  AxiomVerdict funded = verify_price_system(e, gcr_out, ps, /*check_c5=*/false);
  if (funded.status != VerdictStatus::Satisfied)
    throw InputError("payments do not finance the outcome within budgets: " + funded.note);
  RuleXResult resumed = resume_rule_x(e, gcr_out, ledger);
  return {resumed.outcome, resumed.ledger};
}

} // namespace pbexact
