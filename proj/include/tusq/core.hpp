#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tusq {

using ItemId = int32_t;
using Utility = int64_t;

/// Item occurrence with a purchase quantity (internal utility).
struct QItem {
  ItemId item = 0;
  int32_t quantity = 1;
};

/// Set of q-items, strictly ascending by item id.
struct QItemset {
  std::vector<QItem> items;

  bool has_item(ItemId id) const;
  const QItem* find(ItemId id) const;
  std::size_t size() const { return items.size(); }
};

/// Ordered list of q-itemsets. Positions are 1-based throughout the API.
struct QSequence {
  int32_t sid = 0;
  std::vector<QItemset> itemsets;

  int itemset_count() const { return static_cast<int>(itemsets.size()); }
  const QItemset& itemset_at(int pos) const;  // pos in [1, itemset_count()]
  int flattened_length() const;
};

/// External utility (unit profit) per item. Every database item must have an entry.
struct UtilityTable {
  std::unordered_map<ItemId, Utility> profit;

  Utility profit_of(ItemId id) const;  // throws on unknown item
  bool known(ItemId id) const { return profit.count(id) != 0; }
};

struct QDatabase {
  std::vector<QSequence> sequences;
  UtilityTable utilities;
};

/// Plain itemset: item ids strictly ascending.
using Itemset = std::vector<ItemId>;

/// Candidate sequence of plain itemsets, grown at the end by I-/S-extension.
struct Pattern {
  std::vector<Itemset> itemsets;

  int length() const;  // total item count |s|
  bool empty() const { return itemsets.empty(); }
  int itemset_count() const { return static_cast<int>(itemsets.size()); }
  ItemId last_item() const;  // last item of the final itemset
  bool operator==(const Pattern&) const = default;
  bool operator<(const Pattern& o) const { return itemsets < o.itemsets; }
};

/// u(i, j, S) = q(i, j, S) * p(i). Throws if the item is absent from
/// itemset j of S or unknown to the utility table.
Utility q_item_utility(ItemId item, int pos, const QSequence& S, const UtilityTable& U);

/// Sum of member q-item utilities; x must be a subset of itemset pos of S.
Utility itemset_utility_at(const Itemset& x, int pos, const QSequence& S, const UtilityTable& U);

/// Total utility of all q-items of S.
Utility qsequence_utility(const QSequence& S, const UtilityTable& U);

/// Sum of qsequence_utility over all sequences.
Utility database_utility(const QDatabase& D);

}  // namespace tusq
