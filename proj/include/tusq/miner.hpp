#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tusq/chains.hpp"
#include "tusq/core.hpp"
#include "tusq/matching.hpp"

namespace tusq {

/// Threshold ratio in [0,1], kept exact as scaled/denom with denom a
/// power of ten (at most six fractional digits).
struct XiValue {
  long long scaled = 0;
  long long denom = 1;
};

/// Parses a decimal like "0.30"; rejects values outside [0,1] and more
/// than six fractional digits.
XiValue parse_xi(const std::string& text);

struct MiningConfig {
  XiValue xi;
  int max_pattern_length = 0;  // 0 = unlimited; used by oracle-comparison harnesses
  bool disable_sru = false;
  bool disable_tdu = false;
  int threads = 1;
};

struct ResultEntry {
  Pattern pattern;
  Utility utility = 0;
  bool operator==(const ResultEntry&) const = default;
};

/// Queries sorted lexicographically by pattern, no duplicates.
struct ResultSet {
  std::vector<ResultEntry> entries;
  bool operator==(const ResultSet&) const = default;
};

struct MiningStats {
  long long candidates = 0;    // seeds plus every projection attempt
  long long pruned_width = 0;  // extensions rejected by TDU
  long long pruned_depth = 0;  // nodes whose recursion was stopped by SRU
  Utility u_dt = 0;
  long long threshold_num = 0;  // exact threshold = threshold_num / threshold_den
  long long threshold_den = 1;
  long long num_queries = 0;
  long long post_filtered = 0;  // baseline only: patterns dropped by the target filter
  double elapsed_ms = 0.0;
  long long peak_memory_kb = 0;  // best effort, informational
  int threads = 1;
};

struct TargetAbsentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sequences of D containing T, input order and SIDs preserved.
/// Throws TargetAbsentError when nothing remains.
QDatabase dpp_filter(const QDatabase& D, const Pattern& T);

/// Test hook: called once per candidate with its bounds (threads=1 only).
struct SearchObserver {
  std::function<void(const Pattern&, Utility sru, Utility tdu)> on_candidate;
};

/// Shared state of one pattern-growth traversal.
struct GrowthContext {
  const QDatabase& dt;
  const Pattern& target;
  const LITable& li;
  const std::vector<QMatrix>& qms;
  const MiningConfig& cfg;
  long long threshold_num = 0;  // xi.scaled * u(D_T); compare u*denom >= this
  std::vector<ResultEntry>* results = nullptr;
  MiningStats* stats = nullptr;
  const SearchObserver* observer = nullptr;

  bool accepts(Utility value) const { return value * cfg.xi.denom >= threshold_num; }
};

/// Recursive LQS-tree descent from the given node: enumerates
/// I-extensions then S-extensions (items ascending), projects each child,
/// applies width (TDU) pruning, emits queries, and recurses under the
/// depth (SRU) test.
void pattern_growth(const TargetedChain& chain, GrowthContext& ctx);

/// Complete set of utility-driven targeted queries of D for target T.
std::pair<ResultSet, MiningStats> mine(const QDatabase& D, const Pattern& T,
                                       const MiningConfig& cfg,
                                       const SearchObserver* observer = nullptr);

}  // namespace tusq
