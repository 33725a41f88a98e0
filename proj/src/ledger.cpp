#include "pbexact/ledger.hpp"
#include "pbexact/errors.hpp"

namespace pbexact {

PaymentLedger PaymentLedger::fresh(const Election& e, const Rat& b) {
  PaymentLedger ledger;
  ledger.n = e.n;
  ledger.share = b / e.n;
  ledger.paid.resize(e.n + 1);
  ledger.remaining.assign(e.n + 1, ledger.share);
  ledger.remaining[0] = 0;
  return ledger;
}

void PaymentLedger::charge(int voter, int cand, const Rat& amount, bool synthetic_entry) {
  if (amount == 0) return;
  if (amount < 0) throw InternalError("negative charge");
  if (amount > remaining[voter]) throw InternalError("charge exceeds remaining budget");
  remaining[voter] -= amount;
  paid[voter][cand] += amount;
  if (synthetic_entry) synthetic.insert({voter, cand});
}

Rat PaymentLedger::payment(int voter, int cand) const {
  auto it = paid[voter].find(cand);
  return it == paid[voter].end() ? Rat(0) : it->second;
}

Rat PaymentLedger::paid_total(int voter) const {
  Rat sum;
  for (const auto& [cand, amount] : paid[voter]) sum += amount;
  return sum;
}

} // namespace pbexact
