#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tusq/core.hpp"
#include "tusq/matching.hpp"

namespace tusq {

/// Per-sequence utility and rest-utility matrices, flattened in itemset
/// order with items ascending inside each itemset.
struct QMatrix {
  struct Cell {
    ItemId item = 0;
    int pos = 0;  // 1-based itemset position
    Utility utility = 0;
    Utility rest_utility = 0;
  };

  std::vector<Cell> cells;
  std::vector<int> itemset_begin;  // size itemset_count()+1, offsets into cells
  std::unordered_map<ItemId, std::vector<int>> item_cells;  // cell indices ascending

  int itemset_count() const { return static_cast<int>(itemset_begin.size()) - 1; }
  int cell_index(ItemId item, int pos) const;  // -1 when absent
  const std::vector<int>* cells_of(ItemId item) const;
  // cells of itemset pos: [members_begin(pos), members_end(pos))
  int members_begin(int pos) const { return itemset_begin[static_cast<std::size_t>(pos - 1)]; }
  int members_end(int pos) const { return itemset_begin[static_cast<std::size_t>(pos)]; }
};

QMatrix build_qmatrix(const QSequence& S, const UtilityTable& U);

/// One promising extension position of the pattern in a sequence.
/// utility is the maximum utility over instances ending at tid.
struct ChainElement {
  int tid = 0;
  Utility utility = 0;
  Utility rest_utility = 0;
};

struct ChainHead {
  int seq_index = 0;  // position in the filtered database
  int sid = 0;
  Utility sru = 0;
  int prel = 0;
  std::vector<ChainElement> elements;  // ascending by tid, never empty
};

/// Projected database of a pattern: one head per sequence where the
/// pattern has at least one promising extension position.
struct TargetedChain {
  Pattern pattern;
  PrefixState prefix;
  std::vector<ChainHead> heads;  // ascending by seq_index
};

enum class ExtensionKind { IExtension, SExtension };

/// Targeted chains of all 1-sequences over the filtered database,
/// keyed by item (ascending). Items with no promising position map to a
/// headless chain.
std::map<ItemId, TargetedChain> initial_chains(const QDatabase& dt, const Pattern& target,
                                               const LITable& li,
                                               const std::vector<QMatrix>& qms);

/// Chain of parent extended by item; nullopt when no head survives.
/// I-extension requires item to exceed the parent pattern's final item.
std::optional<TargetedChain> project(const TargetedChain& parent, ItemId item,
                                     ExtensionKind kind, const Pattern& target,
                                     const LITable& li, const std::vector<QMatrix>& qms);

/// Sum over heads of the max element utility. Equals u(s) when the
/// pattern contains the target (then no position is filtered).
Utility pattern_utility(const TargetedChain& chain);

/// Sum of head SRU values.
Utility sru_of(const TargetedChain& chain);

/// Sum of the parent head's SRU over sequences where the child kept a
/// head (its pivot is then a promising extension position).
Utility tdu_of(const TargetedChain& parent, const TargetedChain& child);

}  // namespace tusq
