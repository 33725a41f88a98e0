#include "pbexact/axioms.hpp"

#include "pbexact/errors.hpp"
#include "pbexact/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace pbexact {

namespace {

void check_outcome_ids(const Election& e, const Outcome& w) {
  for (int c : w.ids) e.check_candidate(c);
}

std::vector<std::vector<Rat>> block_columns(const Election& e, const VoterBlocks& blocks) {
  std::vector<std::vector<Rat>> col(e.num_candidates() + 1,
                                    std::vector<Rat>(blocks.count(), Rat(0)));
  for (int b = 0; b < blocks.count(); ++b)
    for (const auto& [c, u] : e.utils[blocks.members[b].front()]) col[c][b] = u;
  return col;
}

std::string bundle_bound_note(int m, int cap) {
  return "bundle enumeration over " + std::to_string(m) +
         " candidates exceeds the bound of " + std::to_string(cap);
}

AxiomVerdict inconclusive(std::string note) {
  return AxiomVerdict{VerdictStatus::Inconclusive, std::nullopt, std::move(note)};
}

AxiomVerdict violated(ViolationWitness witness, std::string note = "") {
  return AxiomVerdict{VerdictStatus::Violated, std::move(witness), std::move(note)};
}

std::vector<int> sorted_members(const VoterBlocks& blocks, const std::vector<int>& block_ids) {
  std::vector<int> out;
  for (int b : block_ids)
    out.insert(out.end(), blocks.members[b].begin(), blocks.members[b].end());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

AxiomVerdict check_ejr_approval(const Election& e, const Outcome& w,
                                const SearchBounds& bounds) {
  if (!classify(e).approval)
    throw InputError("the approval fairness check needs 0/1 utilities");
  check_outcome_ids(e, w);
  int m = e.num_candidates();
  if (m > 63) throw BoundExceeded("approval bundles support at most 63 candidates");
  if (m > bounds.max_bundle_candidates)
    return inconclusive(bundle_bound_note(m, bounds.max_bundle_candidates));

  VoterBlocks blocks = voter_blocks(e);
  int nblocks = blocks.count();
  std::vector<uint64_t> mask(nblocks, 0);
  std::vector<long long> size(nblocks);
  std::vector<int> overlap(nblocks); // |A_b intersect W|
  uint64_t wmask = 0;
  for (int c : w.ids) wmask |= uint64_t(1) << (c - 1);
  for (int b = 0; b < nblocks; ++b) {
    for (const auto& [c, u] : e.utils[blocks.members[b].front()])
      mask[b] |= uint64_t(1) << (c - 1);
    size[b] = (long long)blocks.members[b].size();
    overlap[b] = std::popcount(mask[b] & wmask);
  }

  std::vector<int> bundle;
  Rat cost_t(0);
  std::optional<ViolationWitness> hit;

  auto rec = [&](auto&& self, int next, const std::vector<int>& holders) -> bool {
    for (int c = next; c <= m; ++c) {
      uint64_t bit = uint64_t(1) << (c - 1);
      std::vector<int> kept;
      for (int b : holders)
        if (mask[b] & bit) kept.push_back(b);
      bundle.push_back(c);
      cost_t += e.cost[c];
      long long approvers = 0;
      for (int b : kept) approvers += size[b];
      Rat quota = cost_t * e.n;
      bool done = false;
      if (Rat(approvers) >= quota) { // supersets of an under-quota bundle stay under
        long long deprived = 0;
        std::vector<int> deprived_blocks;
        for (int b : kept)
          if (overlap[b] < (int)bundle.size()) {
            deprived += size[b];
            deprived_blocks.push_back(b);
          }
        if (Rat(deprived) >= quota) {
          ViolationWitness witness;
          witness.group = sorted_members(blocks, deprived_blocks);
          witness.bundle = bundle;
          witness.threshold = Rat((long long)bundle.size());
          hit = std::move(witness);
          done = true;
        } else {
          done = self(self, c + 1, kept);
        }
      }
      cost_t -= e.cost[c];
      bundle.pop_back();
      if (done) return true;
    }
    return false;
  };
  std::vector<int> all_blocks(nblocks);
  for (int b = 0; b < nblocks; ++b) all_blocks[b] = b;
  rec(rec, 1, all_blocks);
  if (hit) return violated(*hit);
  return AxiomVerdict{};
}

AxiomVerdict check_ejr(const Election& e, const Outcome& w, const SearchBounds& bounds,
                       bool up_to_one) {
  check_outcome_ids(e, w);
  int m = e.num_candidates();
  int n = e.n;
  if (m > bounds.max_bundle_candidates)
    return inconclusive(bundle_bound_note(m, bounds.max_bundle_candidates));

  std::vector<Rat> u_w(n + 1, Rat(0)), bump(n + 1, Rat(0));
  std::vector<std::vector<Rat>> col(m + 1, std::vector<Rat>(n + 1, Rat(0)));
  for (int i = 1; i <= n; ++i) {
    u_w[i] = utility_of(e, i, w);
    for (const auto& [c, u] : e.utils[i]) {
      col[c][i] = u;
      if (!w.contains(c) && u > bump[i]) bump[i] = u;
    }
  }

  std::vector<Rat> u_t(n + 1, Rat(0));
  std::vector<int> bundle;
  Rat cost_t(0);
  bool partial = false;
  std::optional<ViolationWitness> hit;

  auto test = [&]() -> bool {
    BigInt r_big = rat_ceil(cost_t * n);
    if (r_big > n) return false;
    int r = (int)r_big.convert_to<long long>();
    std::vector<int> pool;
    for (int i = 1; i <= n; ++i)
      if (u_w[i] < u_t[i]) pool.push_back(i);
    if ((int)pool.size() < r) return false;
    if ((int)pool.size() > bounds.max_group_pool) {
      partial = true;
      return false;
    }
    std::vector<int> pick;
    auto combo = [&](auto&& self, int from) -> bool {
      if ((int)pick.size() == r) {
        Rat theta(0);
        std::vector<std::pair<int, Rat>> floors;
        for (int c : bundle) {
          Rat f = col[c][pick.front()];
          for (int i : pick)
            if (col[c][i] < f) f = col[c][i];
          floors.emplace_back(c, f);
          theta += f;
        }
        if (theta <= 0) return false;
        for (int i : pick) {
          if (u_w[i] >= theta) return false;
          if (up_to_one && u_w[i] + bump[i] > theta) return false;
        }
        ViolationWitness witness;
        witness.group = pick;
        witness.bundle = bundle;
        witness.floors = std::move(floors);
        witness.threshold = theta;
        hit = std::move(witness);
        return true;
      }
      for (int j = from; j < (int)pool.size(); ++j) {
        if ((int)pool.size() - j < r - (int)pick.size()) break;
        pick.push_back(pool[j]);
        if (self(self, j + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    return combo(combo, 0);
  };

  auto rec = [&](auto&& self, int next) -> bool {
    for (int c = next; c <= m; ++c) {
      bundle.push_back(c);
      cost_t += e.cost[c];
      for (int i = 1; i <= n; ++i) u_t[i] += col[c][i];
      bool done = false;
      if (cost_t <= 1) done = test() || self(self, c + 1); // heavier bundles owe r > n
      for (int i = 1; i <= n; ++i) u_t[i] -= col[c][i];
      cost_t -= e.cost[c];
      bundle.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec, 1);
  if (hit) return violated(*hit);
  if (partial)
    return inconclusive("some voter pools exceed the group bound of " +
                        std::to_string(bounds.max_group_pool));
  return AxiomVerdict{};
}

AxiomVerdict check_fjr(const Election& e, const Outcome& w, const SearchBounds& bounds) {
  check_outcome_ids(e, w);
  int m = e.num_candidates();
  if (m > bounds.max_bundle_candidates)
    return inconclusive(bundle_bound_note(m, bounds.max_bundle_candidates));

  VoterBlocks blocks = voter_blocks(e);
  int nblocks = blocks.count();
  auto col = block_columns(e, blocks);
  std::vector<Rat> u_wb(nblocks, Rat(0));
  std::vector<long long> size(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    u_wb[b] = utility_of(e, blocks.members[b].front(), w);
    size[b] = (long long)blocks.members[b].size();
  }

  std::vector<Rat> u_tb(nblocks, Rat(0));
  std::vector<int> bundle;
  Rat cost_t(0);
  std::optional<ViolationWitness> hit;

  auto test = [&]() -> bool {
    BigInt r = rat_ceil(cost_t * e.n);
    std::vector<Rat> levels;
    for (int b = 0; b < nblocks; ++b)
      if (u_tb[b] > 0) levels.push_back(u_tb[b]);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (const Rat& beta : levels) { // descending: report the largest level
      BigInt members = 0;
      std::vector<int> qualifying;
      for (int b = 0; b < nblocks; ++b)
        if (u_tb[b] >= beta && u_wb[b] < beta) {
          members += size[b];
          qualifying.push_back(b);
        }
      if (members >= r) {
        ViolationWitness witness;
        witness.group = sorted_members(blocks, qualifying);
        witness.bundle = bundle;
        witness.beta = beta;
        hit = std::move(witness);
        return true;
      }
    }
    return false;
  };

  auto rec = [&](auto&& self, int next) -> bool {
    for (int c = next; c <= m; ++c) {
      bundle.push_back(c);
      cost_t += e.cost[c];
      for (int b = 0; b < nblocks; ++b) u_tb[b] += col[c][b];
      bool done = false;
      if (cost_t <= 1) done = test() || self(self, c + 1);
      for (int b = 0; b < nblocks; ++b) u_tb[b] -= col[c][b];
      cost_t -= e.cost[c];
      bundle.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec, 1);
  if (hit) return violated(*hit);
  return AxiomVerdict{};
}

AxiomVerdict check_core(const Election& e, const Outcome& w, const SearchBounds& bounds) {
  check_outcome_ids(e, w);
  int m = e.num_candidates();
  if (m > bounds.max_bundle_candidates)
    return inconclusive(bundle_bound_note(m, bounds.max_bundle_candidates));

  VoterBlocks blocks = voter_blocks(e);
  int nblocks = blocks.count();
  auto col = block_columns(e, blocks);
  std::vector<Rat> u_wb(nblocks, Rat(0));
  std::vector<long long> size(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    u_wb[b] = utility_of(e, blocks.members[b].front(), w);
    size[b] = (long long)blocks.members[b].size();
  }

  std::vector<Rat> u_tb(nblocks, Rat(0));
  std::vector<int> bundle;
  Rat cost_t(0);
  std::optional<ViolationWitness> hit;

  auto rec = [&](auto&& self, int next) -> bool {
    for (int c = next; c <= m; ++c) {
      bundle.push_back(c);
      cost_t += e.cost[c];
      for (int b = 0; b < nblocks; ++b) u_tb[b] += col[c][b];
      bool done = false;
      if (cost_t <= 1) {
        BigInt members = 0;
        std::vector<int> better;
        for (int b = 0; b < nblocks; ++b)
          if (u_tb[b] > u_wb[b]) {
            members += size[b];
            better.push_back(b);
          }
        if (Rat(members) >= cost_t * e.n) {
          ViolationWitness witness;
          witness.group = sorted_members(blocks, better);
          witness.bundle = bundle;
          hit = std::move(witness);
          done = true;
        } else {
          done = self(self, c + 1);
        }
      }
      for (int b = 0; b < nblocks; ++b) u_tb[b] -= col[c][b];
      cost_t -= e.cost[c];
      bundle.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec, 1);
  if (hit) return violated(*hit);
  return AxiomVerdict{};
}

AxiomVerdict check_alpha_core(const Election& e, const Outcome& w, const Rat& alpha,
                              const SearchBounds& bounds) {
  if (alpha < 1) throw InputError("alpha must be at least 1");
  check_outcome_ids(e, w);
  int m = e.num_candidates();
  if (m > bounds.max_bundle_candidates)
    return inconclusive(bundle_bound_note(m, bounds.max_bundle_candidates));

  VoterBlocks blocks = voter_blocks(e);
  int nblocks = blocks.count();
  auto col = block_columns(e, blocks);
  std::vector<Rat> u_wb(nblocks, Rat(0));
  std::vector<long long> size(nblocks);
  for (int b = 0; b < nblocks; ++b) {
    u_wb[b] = utility_of(e, blocks.members[b].front(), w);
    size[b] = (long long)blocks.members[b].size();
  }

  std::vector<Rat> u_tb(nblocks, Rat(0));
  std::vector<int> bundle;
  Rat cost_t(0);
  std::optional<ViolationWitness> hit;

  auto rec = [&](auto&& self, int next) -> bool {
    for (int c = next; c <= m; ++c) {
      bundle.push_back(c);
      cost_t += e.cost[c];
      for (int b = 0; b < nblocks; ++b) u_tb[b] += col[c][b];
      bool done = false;
      if (cost_t <= 1) {
        BigInt members = 0;
        std::vector<int> blocking;
        for (int b = 0; b < nblocks; ++b) {
          Rat reach = u_wb[b]; // best single addition from the bundle
          for (int c2 : bundle)
            if (!w.contains(c2) && u_wb[b] + col[c2][b] > reach) reach = u_wb[b] + col[c2][b];
          if (reach < u_tb[b] / alpha) {
            members += size[b];
            blocking.push_back(b);
          }
        }
        if (Rat(members) >= cost_t * e.n) {
          ViolationWitness witness;
          witness.group = sorted_members(blocks, blocking);
          witness.bundle = bundle;
          hit = std::move(witness);
          done = true;
        } else {
          done = self(self, c + 1);
        }
      }
      for (int b = 0; b < nblocks; ++b) u_tb[b] -= col[c][b];
      cost_t -= e.cost[c];
      bundle.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec, 1);
  if (hit) return violated(*hit, "alpha = " + format_rat(alpha));
  return AxiomVerdict{VerdictStatus::Satisfied, std::nullopt, "alpha = " + format_rat(alpha)};
}

AxiomVerdict check_exhaustive(const Election& e, const Outcome& w) {
  check_outcome_ids(e, w);
  Rat spent = total_cost(e, w);
  for (int c = 1; c <= e.num_candidates(); ++c) {
    if (w.contains(c)) continue;
    if (spent + e.cost[c] <= 1) {
      ViolationWitness witness;
      witness.candidate = c;
      return violated(std::move(witness),
                      "candidate " + e.candidate_name(c) + " still fits the budget");
    }
  }
  return AxiomVerdict{};
}

PriceSystem price_system_from_ledger(const PaymentLedger& ledger) {
  PriceSystem ps;
  ps.b = ledger.share * ledger.n;
  ps.payments = ledger.paid;
  return ps;
}

AxiomVerdict verify_price_system(const Election& e, const Outcome& w, const PriceSystem& ps,
                                 bool check_c5) {
  check_outcome_ids(e, w);
  if (ps.b < 1) throw InputError("price endowment b must be at least 1");
  if ((int)ps.payments.size() != e.n + 1)
    throw InputError("price system must list payments for voters 1..n");
  for (int i = 1; i <= e.n; ++i)
    for (const auto& [c, p] : ps.payments[i]) {
      e.check_candidate(c);
      if (p < 0) throw InputError("negative payment in price system");
    }
  Rat share = ps.b / e.n;
  int m = e.num_candidates();

  for (int i = 1; i <= e.n; ++i)
    for (const auto& [c, p] : ps.payments[i])
      if (p > 0 && e.utility(i, c) == 0) {
        ViolationWitness witness;
        witness.voter = i;
        witness.candidate = c;
        witness.condition = "C1";
        return violated(std::move(witness), "voter " + std::to_string(i) +
                                                " pays for " + e.candidate_name(c) +
                                                " without liking it");
      }
  for (int i = 1; i <= e.n; ++i) {
    Rat total(0);
    for (const auto& [c, p] : ps.payments[i]) total += p;
    if (total > share) {
      ViolationWitness witness;
      witness.voter = i;
      witness.condition = "C2";
      return violated(std::move(witness), "voter " + std::to_string(i) +
                                              " pays " + format_rat(total) +
                                              ", over the endowment " + format_rat(share));
    }
  }
  std::vector<Rat> received(m + 1, Rat(0));
  for (int i = 1; i <= e.n; ++i)
    for (const auto& [c, p] : ps.payments[i]) received[c] += p;
  for (int c : w.ids)
    if (received[c] != e.cost[c]) {
      ViolationWitness witness;
      witness.candidate = c;
      witness.condition = "C3";
      return violated(std::move(witness), e.candidate_name(c) + " collects " +
                                              format_rat(received[c]) + ", cost is " +
                                              format_rat(e.cost[c]));
    }
  for (int c = 1; c <= m; ++c) {
    if (w.contains(c) || received[c] == 0) continue;
    ViolationWitness witness;
    witness.candidate = c;
    witness.condition = "C4";
    return violated(std::move(witness),
                    "unelected " + e.candidate_name(c) + " receives payments");
  }
  if (check_c5) {
    std::vector<Rat> paid_total(e.n + 1, Rat(0));
    for (int i = 1; i <= e.n; ++i)
      for (const auto& [c, p] : ps.payments[i]) paid_total[i] += p;
    for (int c = 1; c <= m; ++c) {
      if (w.contains(c)) continue;
      Rat surplus(0);
      for (int i = 1; i <= e.n; ++i)
        if (e.utility(i, c) > 0) surplus += share - paid_total[i];
      if (surplus > e.cost[c]) {
        ViolationWitness witness;
        witness.candidate = c;
        witness.condition = "C5";
        return violated(std::move(witness),
                        "supporters of unelected " + e.candidate_name(c) + " retain " +
                            format_rat(surplus) + ", over its cost " + format_rat(e.cost[c]));
      }
    }
  }
  return AxiomVerdict{};
}

std::optional<PriceSystem> find_price_system(const Election& e, const Outcome& w,
                                             int max_variables) {
  check_outcome_ids(e, w);
  int n = e.n, m = e.num_candidates();
  struct Var {
    int voter;
    int cand;
  };
  std::vector<Var> vars;
  std::vector<std::vector<int>> voter_vars(n + 1);
  for (int c : w.ids)
    for (int i = 1; i <= n; ++i)
      if (e.utility(i, c) > 0) {
        voter_vars[i].push_back((int)vars.size());
        vars.push_back(Var{i, c});
      }
  int num_vars = (int)vars.size() + 1; // payments plus the endowment b
  int bvar = num_vars - 1;
  if (num_vars > max_variables)
    throw BoundExceeded("price search needs " + std::to_string(num_vars) +
                        " variables, over the cap of " + std::to_string(max_variables));

  std::vector<std::vector<Rat>> a_eq, a_le;
  std::vector<Rat> b_eq, b_le;
  for (int c : w.ids) { // exact cover of each winner
    std::vector<Rat> row(num_vars, Rat(0));
    for (size_t j = 0; j < vars.size(); ++j)
      if (vars[j].cand == c) row[j] = 1;
    a_eq.push_back(std::move(row));
    b_eq.push_back(e.cost[c]);
  }
  for (int i = 1; i <= n; ++i) { // per-voter endowment b/n
    if (voter_vars[i].empty()) continue;
    std::vector<Rat> row(num_vars, Rat(0));
    for (int j : voter_vars[i]) row[j] = 1;
    row[bvar] = Rat(-1) / n;
    a_le.push_back(std::move(row));
    b_le.push_back(Rat(0));
  }
  for (int c = 1; c <= m; ++c) { // no unelected candidate keeps rich supporters
    if (w.contains(c)) continue;
    std::vector<Rat> row(num_vars, Rat(0));
    long long supporters = 0;
    for (int i = 1; i <= n; ++i)
      if (e.utility(i, c) > 0) {
        ++supporters;
        for (int j : voter_vars[i]) row[j] -= 1;
      }
    row[bvar] = Rat(supporters) / n;
    a_le.push_back(std::move(row));
    b_le.push_back(e.cost[c]);
  }
  {
    std::vector<Rat> row(num_vars, Rat(0));
    row[bvar] = -1;
    a_le.push_back(std::move(row));
    b_le.push_back(Rat(-1));
  }

  auto solution = solve_feasibility(a_eq, b_eq, a_le, b_le, num_vars);
  if (!solution) return std::nullopt;
  PriceSystem ps;
  ps.b = (*solution)[bvar];
  ps.payments.assign(n + 1, {});
  for (size_t j = 0; j < vars.size(); ++j)
    if ((*solution)[j] != 0) ps.payments[vars[j].voter][vars[j].cand] = (*solution)[j];
  if (verify_price_system(e, w, ps).status != VerdictStatus::Satisfied)
    throw InternalError("price search produced an invalid price system");
  return ps;
}

Rat alpha_core_log_bound(const Election& e, int max_support) {
  if (e.num_candidates() == 0) throw InputError("the bound needs at least one candidate");
  Rat umin(0);
  for (int i = 1; i <= e.n; ++i)
    for (const auto& [c, u] : e.utils[i])
      if (umin == 0 || u < umin) umin = u;
  if (umin == 0) throw InternalError("an instance with candidates has positive utilities");

  Rat umax(0);
  for (int i = 1; i <= e.n; ++i) {
    const auto& support = e.utils[i];
    if ((int)support.size() > max_support)
      throw BoundExceeded("voter support larger than " + std::to_string(max_support));
    Rat all_cost(0), all_util(0);
    for (const auto& [c, u] : support) {
      all_cost += e.cost[c];
      all_util += u;
    }
    Rat best(0);
    if (all_cost <= 1) {
      best = all_util;
    } else {
      std::vector<Rat> suffix(support.size() + 1, Rat(0));
      for (int j = (int)support.size() - 1; j >= 0; --j)
        suffix[j] = suffix[j + 1] + support[j].second;
      auto rec = [&](auto&& self, size_t j, Rat cost, Rat util) -> void {
        if (util + suffix[j] <= best) return;
        if (j == support.size()) {
          best = util;
          return;
        }
        if (cost + e.cost[support[j].first] <= 1)
          self(self, j + 1, cost + e.cost[support[j].first], util + support[j].second);
        self(self, j + 1, cost, util);
      };
      rec(rec, 0, Rat(0), Rat(0));
    }
    if (best > umax) umax = best;
  }

  Rat ratio = 2 * umax / umin;
  double approx = ratio.convert_to<double>();
  if (std::isfinite(approx) && approx < 1e300) {
    approx = std::nextafter(approx, std::numeric_limits<double>::infinity());
    double bound = 4.0 * std::log(approx);
    bound += std::abs(bound) * 1e-12 + 1e-12;
    bound = std::nextafter(bound, std::numeric_limits<double>::infinity());
    if (bound < 1e6) {
      long long scaled = (long long)std::ceil(std::ldexp(bound, 40));
      return Rat(BigInt(scaled), BigInt(1) << 40);
    }
  }
  // coarse fallback for enormous ratios: ln x <= bits(x) * ln 2 < bits * 7/10
  BigInt bits = msb(numerator(ratio) / denominator(ratio) + 1) + 2;
  return Rat(4) * Rat(bits) * Rat(7, 10) + 1;
}

} // namespace pbexact
