#include "tusq/reference.hpp"

#include <algorithm>
#include <set>

namespace tusq {

Utility instance_utility(const Pattern& s, const InstancePosition& p, const QSequence& S,
                         const UtilityTable& U) {
  Utility sum = 0;
  for (std::size_t j = 0; j < s.itemsets.size(); ++j)
    sum += itemset_utility_at(s.itemsets[j], p.positions[j], S, U);
  return sum;
}

Utility oracle_sequence_utility(const Pattern& s, const QSequence& S, const UtilityTable& U) {
  Utility best = 0;
  bool any = false;
  for (const auto& p : find_instances(s, S)) {
    Utility u = instance_utility(s, p, S, U);
    if (!any || u > best) best = u;
    any = true;
  }
  return any ? best : 0;
}

Utility oracle_pattern_utility(const Pattern& s, const QDatabase& D) {
  Utility sum = 0;
  for (const auto& S : D.sequences) sum += oracle_sequence_utility(s, S, D.utilities);
  return sum;
}

QSequence rest_sequence(const QSequence& S, int ep, ItemId ext_item) {
  QSequence rest;
  rest.sid = S.sid;
  const QItemset& X = S.itemset_at(ep);
  QItemset tail;
  for (const auto& q : X.items)
    if (q.item > ext_item) tail.items.push_back(q);
  if (!tail.items.empty()) rest.itemsets.push_back(std::move(tail));
  for (int k = ep + 1; k <= S.itemset_count(); ++k) rest.itemsets.push_back(S.itemset_at(k));
  return rest;
}

namespace {

struct OracleSearch {
  const QDatabase& dt;
  const Pattern& target;
  long long threshold_num;
  long long denom;
  int cap;
  std::vector<ItemId> alphabet;
  std::vector<ResultEntry>* out;

  void consider(const Pattern& s, const std::vector<int>& support) {
    if (!pattern_subsequence(target, s)) return;
    Utility u = 0;
    for (int si : support)
      u += oracle_sequence_utility(s, dt.sequences[static_cast<std::size_t>(si)], dt.utilities);
    if (u * denom >= threshold_num) out->push_back(ResultEntry{s, u});
  }

  void grow(Pattern& s, const std::vector<int>& support) {
    if (s.length() >= cap) return;
    ItemId last = s.last_item();
    for (ItemId id : alphabet) {
      // I-extension keeps itemsets canonical: strictly ascending items.
      if (id > last) {
        s.itemsets.back().push_back(id);
        step(s, support);
        s.itemsets.back().pop_back();
      }
    }
    for (ItemId id : alphabet) {
      s.itemsets.push_back({id});
      step(s, support);
      s.itemsets.pop_back();
    }
  }

  void step(Pattern& s, const std::vector<int>& parent_support) {
    std::vector<int> support;
    for (int si : parent_support)
      if (contains(s, dt.sequences[static_cast<std::size_t>(si)])) support.push_back(si);
    if (support.empty()) return;
    consider(s, support);
    grow(s, support);
  }
};

}  // namespace

ResultSet oracle_mine(const QDatabase& D, const Pattern& T, XiValue xi,
                      const OracleConfig& cfg) {
  if (cfg.max_pattern_length < 1)
    throw std::invalid_argument("oracle requires a positive pattern length cap");
  QDatabase dt = dpp_filter(D, T);
  Utility u_dt = database_utility(dt);

  std::set<ItemId> items;
  for (const auto& S : dt.sequences)
    for (const auto& X : S.itemsets)
      for (const auto& q : X.items) items.insert(q.item);

  std::vector<ResultEntry> found;
  OracleSearch search{dt,
                      T,
                      xi.scaled * u_dt,
                      xi.denom,
                      cfg.max_pattern_length,
                      std::vector<ItemId>(items.begin(), items.end()),
                      &found};
  std::vector<int> all(dt.sequences.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  for (ItemId id : search.alphabet) {
    Pattern s;
    s.itemsets.push_back({id});
    search.step(s, all);
  }
  std::sort(found.begin(), found.end(),
            [](const ResultEntry& a, const ResultEntry& b) { return a.pattern < b.pattern; });
  ResultSet rs;
  rs.entries = std::move(found);
  return rs;
}

std::pair<ResultSet, MiningStats> husutq_mine(const QDatabase& D, const Pattern& T, XiValue xi,
                                              int threads, const SearchObserver* observer,
                                              int max_pattern_length) {
  QDatabase dt = dpp_filter(D, T);
  MiningConfig cfg;
  cfg.xi = xi;
  cfg.threads = threads;
  cfg.max_pattern_length = max_pattern_length;
  auto [all, stats] = mine(dt, Pattern{}, cfg, observer);
  ResultSet rs;
  for (auto& e : all.entries) {
    if (pattern_subsequence(T, e.pattern))
      rs.entries.push_back(std::move(e));
    else
      ++stats.post_filtered;
  }
  stats.num_queries = static_cast<long long>(rs.entries.size());
  return {std::move(rs), std::move(stats)};
}

}  // namespace tusq
