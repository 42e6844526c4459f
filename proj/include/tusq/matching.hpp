#pragma once

#include <optional>
#include <vector>

#include "tusq/core.hpp"

namespace tusq {

/// Itemset indices <k1,...,km> of one embedding, strictly increasing, 1-based.
struct InstancePosition {
  std::vector<int> positions;
  bool operator==(const InstancePosition&) const = default;
  bool operator<(const InstancePosition& o) const { return positions < o.positions; }
};

/// x equals the item set of X.
bool itemset_matches(const Itemset& x, const QItemset& X);

/// x is a subset of the item set of X.
bool itemset_subset(const Itemset& x, const QItemset& X);

/// x is a subset of y (both plain, ascending).
bool itemset_subset(const Itemset& x, const Itemset& y);

/// s has at least one instance in S. Greedy earliest matching.
bool contains(const Pattern& s, const QSequence& S);

/// s is a subsequence of r (pattern against pattern).
bool pattern_subsequence(const Pattern& s, const Pattern& r);

/// Every instance position of s in S, sorted. Exponential in the worst
/// case; used by the oracle and tests only, never by the miner.
std::vector<InstancePosition> find_instances(const Pattern& s, const QSequence& S);

/// Distinct last coordinates over all instances, ascending. The first
/// element is the pivot. Requires a non-empty pattern.
std::vector<int> extension_positions(const Pattern& s, const QSequence& S);

/// Coordinate-wise maximal instance (greedy right-to-left), or nullopt
/// when s is not contained in S. Requires a non-empty pattern.
std::optional<InstancePosition> last_instance(const Pattern& s, const QSequence& S);

/// Where the longest prefix of a target T contained by a pattern s ends.
///
/// prel counts matched items. The unmatched part of T starts at T's
/// itemset suffix_start (1-based); residual_start is the index within
/// that itemset's item list where the residual begins (0 means the whole
/// itemset is unmatched, >0 means s's final itemset matched a proper
/// item-prefix of it).
struct PrefixState {
  int prel = 0;
  int suffix_start = 1;
  int residual_start = 0;
  bool suffix_empty = false;

  /// Residual items of T's itemset suffix_start not yet matched.
  Itemset residual(const Pattern& target) const;
  /// Materialized Suf(T, s).
  Pattern suffix(const Pattern& target) const;
};

PrefixState longest_prefix_state(const Pattern& target, const Pattern& s);

/// Per-sequence last-instance positions of the target and of each
/// residual item-suffix of its itemsets.
///
/// last_instance[i] is the (i+1)-th coordinate of the last instance of
/// the target. residual_last[i][r] is the last position q such that the
/// items of target itemset i+1 from index r onward all occur in itemset
/// q of S and the remaining target itemsets are contained strictly after
/// q; residual_last[i][0] equals last_instance[i].
struct LiRow {
  int sid = 0;
  std::vector<int> last_instance;
  std::vector<std::vector<int>> residual_last;
};

struct LITable {
  Pattern target;
  std::vector<LiRow> rows;  // aligned with the filtered database order
};

/// Builds the table over a filtered database; throws if some sequence
/// does not contain the target ("redundant sequence not filtered").
LITable build_li_table(const Pattern& target, const QDatabase& dt);

/// Whether Suf(T,s) is contained in the rest sequence S/(s,ep).
///
/// ep must be an extension position of the pattern in the row's sequence
/// and ext_item the pattern's final item. Reduces to integer comparisons
/// against the row: with a mid-itemset residual the residual items are
/// all greater than ext_item, so residual_last[i][r] >= ep decides; with
/// an itemset-aligned suffix a match inside itemset ep itself only works
/// when every item of the suffix's first itemset is greater than
/// ext_item.
bool is_promising(int ep, ItemId ext_item, const PrefixState& st, const LiRow& row,
                  const Pattern& target);

}  // namespace tusq
