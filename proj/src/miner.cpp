#include "tusq/miner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <limits>
#include <thread>

namespace tusq {

XiValue parse_xi(const std::string& text) {
  auto fail = [&] { throw std::invalid_argument("invalid threshold ratio: " + text); };
  std::size_t dot = text.find('.');
  std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
  std::string frac = dot == std::string::npos ? std::string() : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) fail();
  if (frac.size() > 6) fail();
  for (char c : whole)
    if (c < '0' || c > '9') fail();
  for (char c : frac)
    if (c < '0' || c > '9') fail();
  XiValue xi;
  xi.denom = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) xi.denom *= 10;
  long long w = 0;
  if (!whole.empty()) {
    auto res = std::from_chars(whole.data(), whole.data() + whole.size(), w);
    if (res.ec != std::errc()) fail();
  }
  long long f = 0;
  if (!frac.empty()) {
    auto res = std::from_chars(frac.data(), frac.data() + frac.size(), f);
    if (res.ec != std::errc()) fail();
  }
  xi.scaled = w * xi.denom + f;
  if (xi.scaled > xi.denom) fail();  // ratio above 1
  return xi;
}

QDatabase dpp_filter(const QDatabase& D, const Pattern& T) {
  QDatabase out;
  out.utilities = D.utilities;
  for (const auto& S : D.sequences)
    if (contains(T, S)) out.sequences.push_back(S);
  if (out.sequences.empty()) throw TargetAbsentError("target not present in database");
  return out;
}

namespace {

long long peak_memory_kb() {
  std::ifstream in("/proc/self/status");
  std::string key;
  while (in >> key) {
    if (key == "VmHWM:") {
      long long kb = 0;
      in >> kb;
      return kb;
    }
    in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  }
  return 0;
}

void emit(const TargetedChain& chain, GrowthContext& ctx) {
  if (!chain.prefix.suffix_empty) return;
  Utility u = pattern_utility(chain);
  if (!ctx.accepts(u)) return;
  if (!pattern_subsequence(ctx.target, chain.pattern))
    throw std::logic_error("emitted pattern does not contain the target");
  ctx.results->push_back(ResultEntry{chain.pattern, u});
}

void gather_extension_items(const TargetedChain& chain, const GrowthContext& ctx,
                            std::vector<ItemId>& ilist, std::vector<ItemId>& slist) {
  const ItemId last = chain.pattern.last_item();
  for (const auto& h : chain.heads) {
    const QMatrix& qm = ctx.qms[static_cast<std::size_t>(h.seq_index)];
    for (const auto& e : h.elements)
      for (int ci = qm.members_begin(e.tid); ci < qm.members_end(e.tid); ++ci) {
        ItemId id = qm.cells[static_cast<std::size_t>(ci)].item;
        if (id > last) ilist.push_back(id);
      }
    const int pivot = h.elements.front().tid;
    if (pivot < qm.itemset_count())
      for (int ci = qm.members_end(pivot); ci < static_cast<int>(qm.cells.size()); ++ci)
        slist.push_back(qm.cells[static_cast<std::size_t>(ci)].item);
  }
  std::sort(ilist.begin(), ilist.end());
  ilist.erase(std::unique(ilist.begin(), ilist.end()), ilist.end());
  std::sort(slist.begin(), slist.end());
  slist.erase(std::unique(slist.begin(), slist.end()), slist.end());
}

}  // namespace

void pattern_growth(const TargetedChain& chain, GrowthContext& ctx) {
  if (ctx.cfg.max_pattern_length > 0 &&
      chain.pattern.length() >= ctx.cfg.max_pattern_length)
    return;
  std::vector<ItemId> ilist;
  std::vector<ItemId> slist;
  gather_extension_items(chain, ctx, ilist, slist);
  for (int phase = 0; phase < 2; ++phase) {
    ExtensionKind kind = phase == 0 ? ExtensionKind::IExtension : ExtensionKind::SExtension;
    const auto& items = phase == 0 ? ilist : slist;
    for (ItemId item : items) {
      auto child = project(chain, item, kind, ctx.target, ctx.li, ctx.qms);
      ++ctx.stats->candidates;
      Utility tdu = child.has_value() ? tdu_of(chain, *child) : 0;
      if (ctx.observer != nullptr && ctx.observer->on_candidate) {
        Pattern p = chain.pattern;
        if (kind == ExtensionKind::IExtension)
          p.itemsets.back().push_back(item);
        else
          p.itemsets.push_back({item});
        ctx.observer->on_candidate(p, child ? sru_of(*child) : 0, tdu);
      }
      if (!ctx.cfg.disable_tdu && !ctx.accepts(tdu)) {
        ++ctx.stats->pruned_width;
        continue;
      }
      if (!child.has_value()) continue;
      emit(*child, ctx);
      if (ctx.cfg.disable_sru || ctx.accepts(sru_of(*child)))
        pattern_growth(*child, ctx);
      else
        ++ctx.stats->pruned_depth;
    }
  }
}

std::pair<ResultSet, MiningStats> mine(const QDatabase& D, const Pattern& T,
                                       const MiningConfig& cfg,
                                       const SearchObserver* observer) {
  auto t0 = std::chrono::steady_clock::now();
  QDatabase dt = dpp_filter(D, T);
  MiningStats stats;
  stats.u_dt = database_utility(dt);
  stats.threshold_num = cfg.xi.scaled * stats.u_dt;
  stats.threshold_den = cfg.xi.denom;
  stats.threads = std::max(1, cfg.threads);

  LITable li = build_li_table(T, dt);
  std::vector<QMatrix> qms;
  qms.reserve(dt.sequences.size());
  for (const auto& S : dt.sequences) qms.push_back(build_qmatrix(S, dt.utilities));

  auto seeds = initial_chains(dt, T, li, qms);
  stats.candidates += static_cast<long long>(seeds.size());

  std::vector<const TargetedChain*> seed_list;
  seed_list.reserve(seeds.size());
  for (const auto& [item, chain] : seeds) seed_list.push_back(&chain);

  const int workers = std::min(stats.threads, static_cast<int>(seed_list.size()));
  std::vector<std::vector<ResultEntry>> results(seed_list.size());
  std::vector<MiningStats> local(seed_list.size());

  auto run_seed = [&](std::size_t idx, const SearchObserver* obs) {
    const TargetedChain& chain = *seed_list[idx];
    GrowthContext ctx{dt,           T,           li, qms, cfg, stats.threshold_num,
                      &results[idx], &local[idx], obs};
    emit(chain, ctx);
    if (cfg.disable_sru || ctx.accepts(sru_of(chain)))
      pattern_growth(chain, ctx);
    else
      ++local[idx].pruned_depth;
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < seed_list.size(); ++i) run_seed(i, observer);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < seed_list.size(); i = next.fetch_add(1))
          run_seed(i, nullptr);
      });
    for (auto& th : pool) th.join();
  }

  ResultSet rs;
  for (std::size_t i = 0; i < seed_list.size(); ++i) {
    stats.candidates += local[i].candidates;
    stats.pruned_width += local[i].pruned_width;
    stats.pruned_depth += local[i].pruned_depth;
    rs.entries.insert(rs.entries.end(), results[i].begin(), results[i].end());
  }
  std::sort(rs.entries.begin(), rs.entries.end(),
            [](const ResultEntry& a, const ResultEntry& b) { return a.pattern < b.pattern; });
  stats.num_queries = static_cast<long long>(rs.entries.size());
  stats.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  stats.peak_memory_kb = peak_memory_kb();
  return {std::move(rs), std::move(stats)};
}

}  // namespace tusq
