#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "testutil.hpp"
#include "tusq/chains.hpp"
#include "tusq/miner.hpp"
#include "tusq/reference.hpp"

using namespace tusq;
using testutil::pat;
using testutil::running_example;
using testutil::running_target;

namespace {

struct Fixture {
  QDatabase dt;
  Pattern target;
  LITable li;
  std::vector<QMatrix> qms;
  std::map<ItemId, TargetedChain> seeds;

  explicit Fixture(Pattern T) : target(std::move(T)) {
    dt = dpp_filter(running_example(), target);
    li = build_li_table(target, dt);
    for (const auto& S : dt.sequences) qms.push_back(build_qmatrix(S, dt.utilities));
    seeds = initial_chains(dt, target, li, qms);
  }

  TargetedChain chain_of(const Pattern& p) {
    REQUIRE(!p.itemsets.empty());
    TargetedChain cur = seeds.at(p.itemsets[0][0]);
    for (std::size_t k = 1; k < p.itemsets[0].size(); ++k) {
      auto next = project(cur, p.itemsets[0][k], ExtensionKind::IExtension, target, li, qms);
      REQUIRE(next.has_value());
      cur = *next;
    }
    for (std::size_t j = 1; j < p.itemsets.size(); ++j) {
      auto next = project(cur, p.itemsets[j][0], ExtensionKind::SExtension, target, li, qms);
      REQUIRE(next.has_value());
      cur = *next;
      for (std::size_t k = 1; k < p.itemsets[j].size(); ++k) {
        auto deeper = project(cur, p.itemsets[j][k], ExtensionKind::IExtension, target, li, qms);
        REQUIRE(deeper.has_value());
        cur = *deeper;
      }
    }
    return cur;
  }
};

}  // namespace

TEST_CASE("q-matrix utilities and rest utilities") {
  QDatabase db = running_example();
  QMatrix qm = build_qmatrix(db.sequences[0], db.utilities);
  int c2 = qm.cell_index(3, 2);
  REQUIRE(c2 >= 0);
  CHECK(qm.cells[static_cast<std::size_t>(c2)].rest_utility == 9);
  CHECK(qm.cells.back().rest_utility == 0);
  int c3 = qm.cell_index(3, 3);
  REQUIRE(c3 >= 0);
  CHECK(qm.cells[static_cast<std::size_t>(c3)].utility == 4);
  for (std::size_t i = 1; i < qm.cells.size(); ++i)
    CHECK(qm.cells[i].rest_utility <= qm.cells[i - 1].rest_utility);
}

TEST_CASE("rest utility matches the materialized rest sequence") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    QDatabase db = testutil::random_db(rng);
    for (const auto& S : db.sequences) {
      QMatrix qm = build_qmatrix(S, db.utilities);
      for (const auto& cell : qm.cells) {
        QSequence rest = rest_sequence(S, cell.pos, cell.item);
        CHECK(cell.rest_utility == qsequence_utility(rest, db.utilities));
      }
    }
  }
}

TEST_CASE("initial chains respect the promising filter") {
  Fixture fx(running_target());
  const TargetedChain& a = fx.seeds.at(1);
  // S2 keeps position 1 only: position 3 has no later itemset matching {ce}
  auto s2 = std::find_if(a.heads.begin(), a.heads.end(),
                         [](const ChainHead& h) { return h.sid == 2; });
  REQUIRE(s2 != a.heads.end());
  REQUIRE(s2->elements.size() == 1);
  CHECK(s2->elements[0].tid == 1);
  CHECK(s2->elements[0].utility == 6);

  // f has no promising position anywhere in the filtered database
  auto f = fx.seeds.find(6);
  REQUIRE(f != fx.seeds.end());
  CHECK(f->second.heads.empty());

  // absent item has no chain at all
  CHECK(fx.seeds.find(9) == fx.seeds.end());
}

TEST_CASE("projection of the running example") {
  Fixture fx(running_target());

  auto ac = project(fx.seeds.at(1), 3, ExtensionKind::SExtension, fx.target, fx.li, fx.qms);
  REQUIRE(ac.has_value());
  CHECK(ac->heads[0].sid == 1);
  REQUIRE(ac->heads[0].elements.size() == 1);
  CHECK(ac->heads[0].elements[0].tid == 2);
  CHECK(ac->heads[0].elements[0].utility == 3);

  TargetedChain ace = fx.chain_of(pat({{1}, {3, 5}}));
  REQUIRE(ace.heads.size() == 4);
  CHECK(ace.heads[0].sru == 12);
  CHECK(ace.heads[1].sru == 15);
  CHECK(ace.heads[2].sru == 12);
  CHECK(ace.heads[3].sru == 13);
  CHECK(sru_of(ace) == 52);

  CHECK(!project(fx.seeds.at(1), 9, ExtensionKind::SExtension, fx.target, fx.li, fx.qms)
             .has_value());
  CHECK_THROWS_AS(
      project(fx.seeds.at(3), 2, ExtensionKind::IExtension, fx.target, fx.li, fx.qms),
      std::invalid_argument);
}

TEST_CASE("pattern utility from chains") {
  // Full element sets come from the degenerate empty target.
  Fixture open(Pattern{});
  CHECK(pattern_utility(open.chain_of(pat({{1}, {3}}))) == 26);

  Fixture fx(running_target());
  CHECK(pattern_utility(fx.chain_of(pat({{1}, {3, 5}, {3}}))) == 38);

  TargetedChain empty;
  CHECK(pattern_utility(empty) == 0);
}

TEST_CASE("TDU of the running example") {
  Fixture fx(running_target());
  TargetedChain parent = fx.chain_of(pat({{1}, {3}}));
  auto child = project(parent, 4, ExtensionKind::IExtension, fx.target, fx.li, fx.qms);
  REQUIRE(child.has_value());
  // S1 keeps no element (d only occurs at position 3, dropped in the parent)
  for (const auto& h : child->heads) CHECK(h.sid == 2);
  CHECK(tdu_of(parent, *child) == 18);

  TargetedChain none;
  CHECK(tdu_of(parent, none) == 0);
  CHECK(sru_of(none) == 0);
}

TEST_CASE("promising filtering loses no utility on target-containing patterns") {
  Rng rng(67);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    QDatabase db = testutil::random_db(rng);
    Pattern T = testutil::random_target_from(db, rng, 2);
    QDatabase dt = dpp_filter(db, T);
    LITable li = build_li_table(T, dt);
    std::vector<QMatrix> qms;
    for (const auto& S : dt.sequences) qms.push_back(build_qmatrix(S, dt.utilities));
    auto seeds = initial_chains(dt, T, li, qms);
    std::vector<ItemId> items;
    for (const auto& [id, u] : dt.utilities.profit) items.push_back(id);
    std::sort(items.begin(), items.end());

    std::function<void(const TargetedChain&)> walk = [&](const TargetedChain& chain) {
      if (chain.prefix.suffix_empty) {
        CHECK(pattern_utility(chain) == oracle_pattern_utility(chain.pattern, dt));
        ++checked;
      }
      if (chain.pattern.length() >= 5) return;
      for (ItemId id : items) {
        if (id > chain.pattern.last_item()) {
          auto child = project(chain, id, ExtensionKind::IExtension, T, li, qms);
          if (child) walk(*child);
        }
        auto child = project(chain, id, ExtensionKind::SExtension, T, li, qms);
        if (child) walk(*child);
      }
    };
    for (const auto& [id, chain] : seeds)
      if (!chain.heads.empty()) walk(chain);
  }
  CHECK(checked > 500);
}

TEST_CASE("chain utility equals the instance-enumeration maximum") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    QDatabase db = testutil::random_db(rng);
    // empty target keeps every extension position in the chain
    QDatabase dt = dpp_filter(db, Pattern{});
    LITable li = build_li_table(Pattern{}, dt);
    std::vector<QMatrix> qms;
    for (const auto& S : dt.sequences) qms.push_back(build_qmatrix(S, dt.utilities));
    auto seeds = initial_chains(dt, Pattern{}, li, qms);

    std::function<void(const TargetedChain&, int)> walk = [&](const TargetedChain& chain,
                                                              int depth) {
      for (const auto& h : chain.heads) {
        const QSequence& S = dt.sequences[static_cast<std::size_t>(h.seq_index)];
        Utility best = 0;
        for (const auto& e : h.elements) best = std::max(best, e.utility);
        Utility expect = 0;
        for (const auto& p : find_instances(chain.pattern, S))
          expect = std::max(expect, instance_utility(chain.pattern, p, S, dt.utilities));
        CHECK(best == expect);
      }
      if (depth >= 3) return;
      std::vector<ItemId> items;
      for (const auto& [id, u] : dt.utilities.profit) items.push_back(id);
      std::sort(items.begin(), items.end());
      for (ItemId id : items) {
        if (id > chain.pattern.last_item()) {
          auto child = project(chain, id, ExtensionKind::IExtension, Pattern{}, li, qms);
          if (child) walk(*child, depth + 1);
        }
        auto child = project(chain, id, ExtensionKind::SExtension, Pattern{}, li, qms);
        if (child) walk(*child, depth + 1);
      }
    };
    for (const auto& [id, chain] : seeds)
      if (!chain.heads.empty()) walk(chain, 1);
  }
}
