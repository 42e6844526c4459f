#include "tusq/core.hpp"

#include <algorithm>

namespace tusq {

bool QItemset::has_item(ItemId id) const { return find(id) != nullptr; }

const QItem* QItemset::find(ItemId id) const {
  auto it = std::lower_bound(items.begin(), items.end(), id,
                             [](const QItem& q, ItemId v) { return q.item < v; });
  if (it == items.end() || it->item != id) return nullptr;
  return &*it;
}

const QItemset& QSequence::itemset_at(int pos) const {
  if (pos < 1 || pos > itemset_count())
    throw std::out_of_range("itemset position " + std::to_string(pos) + " out of range");
  return itemsets[static_cast<std::size_t>(pos - 1)];
}

int QSequence::flattened_length() const {
  int n = 0;
  for (const auto& x : itemsets) n += static_cast<int>(x.items.size());
  return n;
}

Utility UtilityTable::profit_of(ItemId id) const {
  auto it = profit.find(id);
  if (it == profit.end())
    throw std::invalid_argument("unknown item " + std::to_string(id));
  return it->second;
}

int Pattern::length() const {
  int n = 0;
  for (const auto& x : itemsets) n += static_cast<int>(x.size());
  return n;
}

ItemId Pattern::last_item() const {
  if (empty() || itemsets.back().empty())
    throw std::logic_error("last_item of empty pattern");
  return itemsets.back().back();
}

Utility q_item_utility(ItemId item, int pos, const QSequence& S, const UtilityTable& U) {
  const QItem* q = S.itemset_at(pos).find(item);
  if (q == nullptr)
    throw std::invalid_argument("item not present: item " + std::to_string(item) +
                                " in itemset " + std::to_string(pos));
  return static_cast<Utility>(q->quantity) * U.profit_of(item);
}

Utility itemset_utility_at(const Itemset& x, int pos, const QSequence& S, const UtilityTable& U) {
  Utility sum = 0;
  for (ItemId id : x) sum += q_item_utility(id, pos, S, U);
  return sum;
}

Utility qsequence_utility(const QSequence& S, const UtilityTable& U) {
  Utility sum = 0;
  for (const auto& x : S.itemsets)
    for (const auto& q : x.items) sum += static_cast<Utility>(q.quantity) * U.profit_of(q.item);
  return sum;
}

Utility database_utility(const QDatabase& D) {
  Utility sum = 0;
  for (const auto& s : D.sequences) sum += qsequence_utility(s, D.utilities);
  return sum;
}

}  // namespace tusq
