#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "tusq/core.hpp"
#include "tusq/io.hpp"

namespace tusq::testutil {

// Running example database: six items mapped a=1 b=2 c=3 d=4 e=5 f=6.
inline QDatabase running_example() {
  QDatabase db;
  db.utilities.profit = {{1, 2}, {2, 1}, {3, 1}, {4, 3}, {5, 1}, {6, 2}};
  auto seq = [](int sid, std::vector<std::vector<std::pair<ItemId, int>>> sets) {
    QSequence s;
    s.sid = sid;
    for (auto& set : sets) {
      QItemset x;
      for (auto [id, q] : set) x.items.push_back(QItem{id, q});
      s.itemsets.push_back(std::move(x));
    }
    return s;
  };
  db.sequences.push_back(seq(1, {{{1, 1}, {2, 3}}, {{3, 1}, {5, 2}}, {{3, 4}, {4, 1}}}));
  db.sequences.push_back(seq(2, {{{1, 3}}, {{3, 1}, {4, 1}, {5, 2}}, {{1, 1}}, {{3, 3}, {5, 1}}}));
  db.sequences.push_back(seq(3, {{{2, 2}, {3, 1}}, {{6, 2}}, {{1, 3}, {4, 2}}}));
  db.sequences.push_back(seq(4, {{{1, 1}}, {{3, 3}, {5, 2}}, {{3, 2}, {5, 1}}, {{3, 2}}}));
  db.sequences.push_back(seq(5, {{{1, 2}}, {{3, 1}, {5, 1}}, {{3, 2}, {5, 1}}, {{6, 2}}}));
  return db;
}

inline Pattern pat(std::vector<std::vector<ItemId>> itemsets) {
  Pattern p;
  for (auto& x : itemsets) p.itemsets.emplace_back(x.begin(), x.end());
  return p;
}

// Target of the running example: <{a},{ce},{c}>.
inline Pattern running_target() { return pat({{1}, {3, 5}, {3}}); }

struct RandomDbParams {
  int max_sequences = 8;
  int max_itemsets = 6;
  int max_items_per_itemset = 4;
  int alphabet = 8;
  int max_qty = 5;
  int max_profit = 5;
  bool allow_zero_profit = false;
};

inline QDatabase random_db(Rng& rng, const RandomDbParams& p = {}) {
  QDatabase db;
  for (ItemId id = 1; id <= p.alphabet; ++id) {
    Utility lo = p.allow_zero_profit ? 0 : 1;
    db.utilities.profit[id] =
        lo + static_cast<Utility>(rng.below(static_cast<std::uint64_t>(p.max_profit + 1 - lo)));
  }
  int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.max_sequences)));
  for (int i = 0; i < n; ++i) {
    QSequence s;
    s.sid = i + 1;
    int sets = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.max_itemsets)));
    for (int k = 0; k < sets; ++k) {
      int count = 1 + static_cast<int>(
                          rng.below(static_cast<std::uint64_t>(
                              std::min(p.max_items_per_itemset, p.alphabet))));
      std::vector<ItemId> chosen;
      while (static_cast<int>(chosen.size()) < count) {
        auto id = static_cast<ItemId>(1 + rng.below(static_cast<std::uint64_t>(p.alphabet)));
        if (std::find(chosen.begin(), chosen.end(), id) == chosen.end()) chosen.push_back(id);
      }
      std::sort(chosen.begin(), chosen.end());
      QItemset x;
      for (ItemId id : chosen)
        x.items.push_back(
            QItem{id, static_cast<int32_t>(1 + rng.below(static_cast<std::uint64_t>(p.max_qty)))});
      s.itemsets.push_back(std::move(x));
    }
    db.sequences.push_back(std::move(s));
  }
  return db;
}

// Random non-empty sub-pattern of a database sequence with up to
// max_itemsets itemsets; always contained in that sequence.
inline Pattern random_target_from(const QDatabase& db, Rng& rng, int max_itemsets = 3) {
  const QSequence& S =
      db.sequences[rng.below(static_cast<std::uint64_t>(db.sequences.size()))];
  int avail = S.itemset_count();
  int want = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                     std::min(avail, max_itemsets))));
  std::vector<int> positions;
  while (static_cast<int>(positions.size()) < want) {
    int pos = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(avail)));
    if (std::find(positions.begin(), positions.end(), pos) == positions.end())
      positions.push_back(pos);
  }
  std::sort(positions.begin(), positions.end());
  Pattern t;
  for (int pos : positions) {
    const QItemset& X = S.itemset_at(pos);
    Itemset x;
    for (const auto& q : X.items)
      if (rng.below(2) == 0) x.push_back(q.item);
    if (x.empty()) x.push_back(X.items[rng.below(X.items.size())].item);
    t.itemsets.push_back(std::move(x));
  }
  return t;
}

}  // namespace tusq::testutil
