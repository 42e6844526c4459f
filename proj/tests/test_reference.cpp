#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <map>

#include "testutil.hpp"
#include "tusq/miner.hpp"
#include "tusq/reference.hpp"

using namespace tusq;
using testutil::pat;
using testutil::running_example;
using testutil::running_target;

namespace {

// Max-utility embedding by dynamic programming, no instance enumeration.
Utility dp_sequence_utility(const Pattern& s, const QSequence& S, const UtilityTable& U) {
  constexpr Utility kNone = std::numeric_limits<Utility>::min();
  const int m = s.itemset_count();
  const int v = S.itemset_count();
  std::vector<Utility> prev(static_cast<std::size_t>(v) + 1, 0);  // best over positions < k
  for (int j = 1; j <= m; ++j) {
    std::vector<Utility> cur(static_cast<std::size_t>(v) + 1, kNone);
    Utility best_before = kNone;
    for (int k = 1; k <= v; ++k) {
      best_before = std::max(best_before, prev[static_cast<std::size_t>(k - 1)]);
      if (best_before == kNone) {
        cur[static_cast<std::size_t>(k)] = kNone;
        continue;
      }
      const Itemset& x = s.itemsets[static_cast<std::size_t>(j - 1)];
      if (itemset_subset(x, S.itemset_at(k)))
        cur[static_cast<std::size_t>(k)] = best_before + itemset_utility_at(x, k, S, U);
    }
    if (j == 1)
      for (int k = 1; k <= v; ++k)
        cur[static_cast<std::size_t>(k)] =
            itemset_subset(s.itemsets[0], S.itemset_at(k))
                ? itemset_utility_at(s.itemsets[0], k, S, U)
                : kNone;
    prev = std::move(cur);
  }
  Utility best = kNone;
  for (int k = 1; k <= v; ++k) best = std::max(best, prev[static_cast<std::size_t>(k)]);
  return best == kNone ? 0 : best;
}

}  // namespace

TEST_CASE("oracle agrees with the miner on the running example") {
  QDatabase db = running_example();
  XiValue xi = parse_xi("0.30");
  ResultSet oracle = oracle_mine(db, running_target(), xi, OracleConfig{8});
  MiningConfig cfg;
  cfg.xi = xi;
  auto [mined, stats] = mine(db, running_target(), cfg);
  CHECK(oracle == mined);
}

TEST_CASE("oracle with a zero threshold lists every contained superpattern") {
  QDatabase db = running_example();
  ResultSet rs = oracle_mine(db, running_target(), parse_xi("0"), OracleConfig{6});
  CHECK(rs.entries.size() >= 2);
  QDatabase dt = dpp_filter(db, running_target());
  for (const auto& e : rs.entries) {
    CHECK(pattern_subsequence(running_target(), e.pattern));
    bool contained = false;
    for (const auto& S : dt.sequences) contained = contained || contains(e.pattern, S);
    CHECK(contained);
  }
}

TEST_CASE("instance-enumeration utility agrees with the DP computation") {
  Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    QDatabase db = testutil::random_db(rng);
    Pattern s = testutil::random_target_from(db, rng);
    for (const auto& S : db.sequences)
      CHECK(oracle_sequence_utility(s, S, db.utilities) ==
            dp_sequence_utility(s, S, db.utilities));
  }
}

TEST_CASE("baseline equals the miner on the running example with more candidates") {
  QDatabase db = running_example();
  XiValue xi = parse_xi("0.30");
  MiningConfig cfg;
  cfg.xi = xi;
  auto [mined, ms] = mine(db, running_target(), cfg);
  auto [base, bs] = husutq_mine(db, running_target(), xi);
  CHECK(base == mined);
  CHECK(bs.candidates > ms.candidates);
  CHECK(bs.post_filtered > 0);
}

TEST_CASE("baseline with an empty target is plain high-utility sequence mining") {
  QDatabase db = running_example();
  XiValue xi = parse_xi("0.5");
  auto [base, bs] = husutq_mine(db, Pattern{}, xi);
  MiningConfig cfg;
  cfg.xi = xi;
  auto [plain, ps] = mine(db, Pattern{}, cfg);
  CHECK(base == plain);
  CHECK(bs.post_filtered == 0);
}

TEST_CASE("oracle, miner and baseline agree on random databases") {
  Rng rng(113);
  int ran = 0;
  while (ran < 60) {
    QDatabase db = testutil::random_db(rng);
    Pattern T = testutil::random_target_from(db, rng);
    XiValue xi = parse_xi(ran % 2 == 0 ? "0.1" : "0.4");
    MiningConfig cfg;
    cfg.xi = xi;
    cfg.max_pattern_length = 5;
    auto [mined, ms] = mine(db, T, cfg);
    ResultSet oracle = oracle_mine(db, T, xi, OracleConfig{5});
    CHECK(mined == oracle);
    auto [base, bs] = husutq_mine(db, T, xi, 1, nullptr, 5);
    CHECK(base == mined);
    CHECK(bs.candidates >= ms.candidates);
    ++ran;
  }
}

TEST_CASE("target-free bounds dominate the targeted ones per shared candidate") {
  QDatabase db = running_example();
  XiValue xi = parse_xi("0.1");
  std::map<Pattern, std::pair<Utility, Utility>> tusq_bounds;
  SearchObserver obs_t;
  obs_t.on_candidate = [&](const Pattern& p, Utility sru, Utility tdu) {
    tusq_bounds[p] = {sru, tdu};
  };
  MiningConfig cfg;
  cfg.xi = xi;
  (void)mine(db, running_target(), cfg, &obs_t);

  SearchObserver obs_b;
  int shared = 0;
  obs_b.on_candidate = [&](const Pattern& p, Utility peu, Utility rsu) {
    auto it = tusq_bounds.find(p);
    if (it == tusq_bounds.end()) return;
    CHECK(peu >= it->second.first);
    CHECK(rsu >= it->second.second);
    ++shared;
  };
  (void)husutq_mine(db, running_target(), xi, 1, &obs_b);
  CHECK(shared > 0);
}
