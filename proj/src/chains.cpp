#include "tusq/chains.hpp"

#include <algorithm>
#include <limits>

namespace tusq {

int QMatrix::cell_index(ItemId item, int pos) const {
  int lo = members_begin(pos);
  int hi = members_end(pos);
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (cells[static_cast<std::size_t>(mid)].item < item)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < members_end(pos) && cells[static_cast<std::size_t>(lo)].item == item) return lo;
  return -1;
}

const std::vector<int>* QMatrix::cells_of(ItemId item) const {
  auto it = item_cells.find(item);
  if (it == item_cells.end()) return nullptr;
  return &it->second;
}

QMatrix build_qmatrix(const QSequence& S, const UtilityTable& U) {
  QMatrix qm;
  qm.itemset_begin.reserve(S.itemsets.size() + 1);
  qm.itemset_begin.push_back(0);
  int pos = 0;
  for (const auto& X : S.itemsets) {
    ++pos;
    for (const auto& q : X.items) {
      QMatrix::Cell c;
      c.item = q.item;
      c.pos = pos;
      c.utility = static_cast<Utility>(q.quantity) * U.profit_of(q.item);
      qm.cells.push_back(c);
    }
    qm.itemset_begin.push_back(static_cast<int>(qm.cells.size()));
  }
  Utility rest = 0;
  for (auto it = qm.cells.rbegin(); it != qm.cells.rend(); ++it) {
    it->rest_utility = rest;
    rest += it->utility;
  }
  for (int i = 0; i < static_cast<int>(qm.cells.size()); ++i)
    qm.item_cells[qm.cells[static_cast<std::size_t>(i)].item].push_back(i);
  return qm;
}

namespace {

// A descendant needs at least one item after the extension item, so only
// positions with a non-empty rest sequence contribute. Rest utility alone
// cannot decide that when zero-profit items exist; the cell index can.
struct SruAccumulator {
  const QMatrix& qm;
  Utility sru = 0;

  void add(int cell_index, Utility utility, Utility rest_utility) {
    if (cell_index + 1 < static_cast<int>(qm.cells.size()))
      sru = std::max(sru, utility + rest_utility);
  }
};

}  // namespace

std::map<ItemId, TargetedChain> initial_chains(const QDatabase& dt, const Pattern& target,
                                               const LITable& li,
                                               const std::vector<QMatrix>& qms) {
  std::map<ItemId, TargetedChain> out;
  // One prefix state per distinct item.
  for (std::size_t si = 0; si < dt.sequences.size(); ++si)
    for (const auto& X : dt.sequences[si].itemsets)
      for (const auto& q : X.items)
        if (out.find(q.item) == out.end()) {
          TargetedChain chain;
          chain.pattern.itemsets.push_back({q.item});
          chain.prefix = longest_prefix_state(target, chain.pattern);
          out.emplace(q.item, std::move(chain));
        }
  for (std::size_t si = 0; si < dt.sequences.size(); ++si) {
    const QMatrix& qm = qms[si];
    for (auto& [item, chain] : out) {
      const auto* idx = qm.cells_of(item);
      if (idx == nullptr) continue;
      std::vector<ChainElement> elems;
      SruAccumulator sru{qm};
      for (int ci : *idx) {
        const auto& cell = qm.cells[static_cast<std::size_t>(ci)];
        if (!is_promising(cell.pos, item, chain.prefix, li.rows[si], target)) continue;
        elems.push_back(ChainElement{cell.pos, cell.utility, cell.rest_utility});
        sru.add(ci, cell.utility, cell.rest_utility);
      }
      if (elems.empty()) continue;
      ChainHead head;
      head.seq_index = static_cast<int>(si);
      head.sid = dt.sequences[si].sid;
      head.sru = sru.sru;
      head.prel = chain.prefix.prel;
      head.elements = std::move(elems);
      chain.heads.push_back(std::move(head));
    }
  }
  return out;
}

std::optional<TargetedChain> project(const TargetedChain& parent, ItemId item,
                                     ExtensionKind kind, const Pattern& target,
                                     const LITable& li, const std::vector<QMatrix>& qms) {
  if (parent.pattern.empty()) throw std::invalid_argument("cannot extend the empty pattern");
  if (kind == ExtensionKind::IExtension && item <= parent.pattern.last_item())
    throw std::invalid_argument("non-canonical extension");

  TargetedChain child;
  child.pattern = parent.pattern;
  if (kind == ExtensionKind::IExtension)
    child.pattern.itemsets.back().push_back(item);
  else
    child.pattern.itemsets.push_back({item});
  child.prefix = longest_prefix_state(target, child.pattern);

  for (const auto& h : parent.heads) {
    const QMatrix& qm = qms[static_cast<std::size_t>(h.seq_index)];
    const LiRow& row = li.rows[static_cast<std::size_t>(h.seq_index)];
    std::vector<ChainElement> elems;
    SruAccumulator sru{qm};
    if (kind == ExtensionKind::IExtension) {
      for (const auto& e : h.elements) {
        int ci = qm.cell_index(item, e.tid);
        if (ci < 0) continue;
        if (!is_promising(e.tid, item, child.prefix, row, target)) continue;
        const auto& cell = qm.cells[static_cast<std::size_t>(ci)];
        elems.push_back(ChainElement{e.tid, e.utility + cell.utility, cell.rest_utility});
        sru.add(ci, elems.back().utility, cell.rest_utility);
      }
    } else {
      const auto* idx = qm.cells_of(item);
      if (idx == nullptr) continue;
      Utility best = std::numeric_limits<Utility>::min();
      std::size_t pe = 0;
      for (int ci : *idx) {
        const auto& cell = qm.cells[static_cast<std::size_t>(ci)];
        while (pe < h.elements.size() && h.elements[pe].tid < cell.pos) {
          best = std::max(best, h.elements[pe].utility);
          ++pe;
        }
        if (best == std::numeric_limits<Utility>::min()) continue;
        if (!is_promising(cell.pos, item, child.prefix, row, target)) continue;
        elems.push_back(ChainElement{cell.pos, best + cell.utility, cell.rest_utility});
        sru.add(ci, elems.back().utility, cell.rest_utility);
      }
    }
    if (elems.empty()) continue;
    ChainHead head;
    head.seq_index = h.seq_index;
    head.sid = h.sid;
    head.sru = sru.sru;
    head.prel = child.prefix.prel;
    head.elements = std::move(elems);
    child.heads.push_back(std::move(head));
  }
  if (child.heads.empty()) return std::nullopt;
  return child;
}

Utility pattern_utility(const TargetedChain& chain) {
  Utility sum = 0;
  for (const auto& h : chain.heads) {
    Utility best = 0;
    for (const auto& e : h.elements) best = std::max(best, e.utility);
    sum += best;
  }
  return sum;
}

Utility sru_of(const TargetedChain& chain) {
  Utility sum = 0;
  for (const auto& h : chain.heads) sum += h.sru;
  return sum;
}

Utility tdu_of(const TargetedChain& parent, const TargetedChain& child) {
  Utility sum = 0;
  std::size_t pi = 0;
  for (const auto& ch : child.heads) {
    while (pi < parent.heads.size() && parent.heads[pi].seq_index < ch.seq_index) ++pi;
    if (pi < parent.heads.size() && parent.heads[pi].seq_index == ch.seq_index)
      sum += parent.heads[pi].sru;
  }
  return sum;
}

}  // namespace tusq
