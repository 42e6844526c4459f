#pragma once

#include <utility>

#include "tusq/core.hpp"
#include "tusq/matching.hpp"
#include "tusq/miner.hpp"

namespace tusq {

/// The oracle enumerates a finite space, so a cap on pattern length in
/// items is required. Choosing it at least as large as the longest
/// flattened sequence of the filtered database makes the result complete.
struct OracleConfig {
  int max_pattern_length = 0;
};

/// Utility of one instance: sum of itemset utilities at its coordinates.
Utility instance_utility(const Pattern& s, const InstancePosition& p, const QSequence& S,
                         const UtilityTable& U);

/// u(s, S) by explicit instance enumeration; 0 when not contained.
Utility oracle_sequence_utility(const Pattern& s, const QSequence& S, const UtilityTable& U);

/// u(s) over the database by instance enumeration.
Utility oracle_pattern_utility(const Pattern& s, const QDatabase& D);

/// The rest of S after the occurrence of ext_item inside itemset ep:
/// the tail of that itemset past ext_item, then all later itemsets.
QSequence rest_sequence(const QSequence& S, int ep, ItemId ext_item);

/// Exhaustive ground truth: every canonical pattern up to the cap that
/// contains the target and reaches the threshold, with utilities computed
/// by instance enumeration. No chains, no bounds, no pruning.
ResultSet oracle_mine(const QDatabase& D, const Pattern& T, XiValue xi,
                      const OracleConfig& cfg);

/// Baseline: DPP, then full high-utility sequence mining over the
/// filtered database with target-free bounds (the degenerate empty-target
/// run of the same machinery realizes PEU/RSU), then a post-filter
/// keeping patterns that contain the target. max_pattern_length is the
/// same comparison-harness cap as MiningConfig's, 0 = unlimited.
std::pair<ResultSet, MiningStats> husutq_mine(const QDatabase& D, const Pattern& T, XiValue xi,
                                              int threads = 1,
                                              const SearchObserver* observer = nullptr,
                                              int max_pattern_length = 0);

}  // namespace tusq
