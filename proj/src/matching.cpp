#include "tusq/matching.hpp"

#include <algorithm>
#include <functional>

namespace tusq {

bool itemset_matches(const Itemset& x, const QItemset& X) {
  if (x.empty() || x.size() != X.items.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != X.items[k].item) return false;
  return true;
}

bool itemset_subset(const Itemset& x, const QItemset& X) {
  std::size_t j = 0;
  for (ItemId id : x) {
    while (j < X.items.size() && X.items[j].item < id) ++j;
    if (j == X.items.size() || X.items[j].item != id) return false;
    ++j;
  }
  return true;
}

bool itemset_subset(const Itemset& x, const Itemset& y) {
  std::size_t j = 0;
  for (ItemId id : x) {
    while (j < y.size() && y[j] < id) ++j;
    if (j == y.size() || y[j] != id) return false;
    ++j;
  }
  return true;
}

bool contains(const Pattern& s, const QSequence& S) {
  int pos = 0;
  for (const auto& x : s.itemsets) {
    ++pos;
    while (pos <= S.itemset_count() && !itemset_subset(x, S.itemset_at(pos))) ++pos;
    if (pos > S.itemset_count()) return false;
  }
  return true;
}

bool pattern_subsequence(const Pattern& s, const Pattern& r) {
  std::size_t j = 0;
  for (const auto& x : s.itemsets) {
    while (j < r.itemsets.size() && !itemset_subset(x, r.itemsets[j])) ++j;
    if (j == r.itemsets.size()) return false;
    ++j;
  }
  return true;
}

std::vector<InstancePosition> find_instances(const Pattern& s, const QSequence& S) {
  std::vector<InstancePosition> out;
  if (s.empty()) {
    out.push_back(InstancePosition{});
    return out;
  }
  const int m = s.itemset_count();
  const int v = S.itemset_count();
  // Latest feasible position per pattern itemset (right-to-left greedy);
  // bounding the scan by it keeps every branch productive.
  std::vector<int> latest(static_cast<std::size_t>(m), 0);
  int bound = v;
  for (int j = m - 1; j >= 0; --j) {
    int k = bound;
    while (k >= 1 && !itemset_subset(s.itemsets[static_cast<std::size_t>(j)], S.itemset_at(k)))
      --k;
    if (k < 1) return out;
    latest[static_cast<std::size_t>(j)] = k;
    bound = k - 1;
  }
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int j, int from) {
    for (int k = from; k <= latest[static_cast<std::size_t>(j)]; ++k) {
      if (!itemset_subset(s.itemsets[static_cast<std::size_t>(j)], S.itemset_at(k))) continue;
      cur[static_cast<std::size_t>(j)] = k;
      if (j + 1 == m)
        out.push_back(InstancePosition{cur});
      else
        rec(j + 1, k + 1);
    }
  };
  rec(0, 1);
  return out;
}

std::vector<int> extension_positions(const Pattern& s, const QSequence& S) {
  std::vector<int> out;
  if (s.empty()) return out;
  // Earliest end of the prefix without the final itemset; any later
  // itemset holding the final itemset is an extension position.
  Pattern prefix{std::vector<Itemset>(s.itemsets.begin(), s.itemsets.end() - 1)};
  int after = 0;
  for (const auto& x : prefix.itemsets) {
    ++after;
    while (after <= S.itemset_count() && !itemset_subset(x, S.itemset_at(after))) ++after;
    if (after > S.itemset_count()) return out;
  }
  const Itemset& last = s.itemsets.back();
  for (int k = after + 1; k <= S.itemset_count(); ++k)
    if (itemset_subset(last, S.itemset_at(k))) out.push_back(k);
  return out;
}

std::optional<InstancePosition> last_instance(const Pattern& s, const QSequence& S) {
  if (s.empty()) return std::nullopt;
  const int m = s.itemset_count();
  std::vector<int> pos(static_cast<std::size_t>(m), 0);
  int bound = S.itemset_count();
  for (int j = m - 1; j >= 0; --j) {
    int k = bound;
    while (k >= 1 && !itemset_subset(s.itemsets[static_cast<std::size_t>(j)], S.itemset_at(k)))
      --k;
    if (k < 1) return std::nullopt;
    pos[static_cast<std::size_t>(j)] = k;
    bound = k - 1;
  }
  return InstancePosition{std::move(pos)};
}

Itemset PrefixState::residual(const Pattern& target) const {
  if (suffix_empty) return {};
  const Itemset& z = target.itemsets[static_cast<std::size_t>(suffix_start - 1)];
  return Itemset(z.begin() + residual_start, z.end());
}

Pattern PrefixState::suffix(const Pattern& target) const {
  Pattern out;
  if (suffix_empty) return out;
  out.itemsets.push_back(residual(target));
  for (int i = suffix_start + 1; i <= target.itemset_count(); ++i)
    out.itemsets.push_back(target.itemsets[static_cast<std::size_t>(i - 1)]);
  return out;
}

PrefixState longest_prefix_state(const Pattern& target, const Pattern& s) {
  PrefixState st;
  const int n = target.itemset_count();
  if (n == 0) {
    st.suffix_empty = true;
    st.suffix_start = 1;
    return st;
  }
  // Greedy earliest full-itemset matching of target itemsets through s.
  int full = 0;
  int items = 0;
  int j = 0;  // 0-based index into s.itemsets of the last consumed itemset, 0 = none
  while (full < n) {
    const Itemset& z = target.itemsets[static_cast<std::size_t>(full)];
    int k = j;
    while (k < s.itemset_count() && !itemset_subset(z, s.itemsets[static_cast<std::size_t>(k)]))
      ++k;
    if (k == s.itemset_count()) break;
    j = k + 1;
    ++full;
    items += static_cast<int>(z.size());
  }
  if (full == n) {
    st.prel = items;
    st.suffix_start = n + 1;
    st.suffix_empty = true;
    return st;
  }
  st.suffix_start = full + 1;
  st.residual_start = 0;
  // Partial match of the next target itemset inside s's final itemset,
  // allowed only when the full matches ended strictly before it. The
  // matched part must be an item-prefix whose unmatched remainder items
  // all exceed every unmatched item of the final itemset.
  if (!s.empty() && j < s.itemset_count()) {
    const Itemset& z = target.itemsets[static_cast<std::size_t>(full)];
    const Itemset& xm = s.itemsets.back();
    for (int cut = static_cast<int>(z.size()) - 1; cut >= 1; --cut) {
      Itemset head(z.begin(), z.begin() + cut);
      if (!itemset_subset(head, xm)) continue;
      // remaining items of xm not consumed by head
      ItemId max_rest = -1;
      {
        std::size_t h = 0;
        for (ItemId id : xm) {
          if (h < head.size() && head[h] == id) {
            ++h;
            continue;
          }
          max_rest = std::max(max_rest, id);
        }
      }
      if (z[static_cast<std::size_t>(cut)] > max_rest) {
        st.residual_start = cut;
        items += cut;
        break;
      }
    }
  }
  st.prel = items;
  st.suffix_empty = false;
  return st;
}

LITable build_li_table(const Pattern& target, const QDatabase& dt) {
  LITable table;
  table.target = target;
  const int n = target.itemset_count();
  table.rows.reserve(dt.sequences.size());
  for (const auto& S : dt.sequences) {
    auto li = last_instance(target, S);
    if (n > 0 && !li.has_value())
      throw std::invalid_argument("redundant sequence not filtered: sid " +
                                  std::to_string(S.sid));
    LiRow row;
    row.sid = S.sid;
    if (n > 0) row.last_instance = li->positions;
    row.residual_last.resize(static_cast<std::size_t>(n));
    int next_start = S.itemset_count() + 1;  // sentinel beyond the last itemset
    for (int i = n; i >= 1; --i) {
      const Itemset& z = target.itemsets[static_cast<std::size_t>(i - 1)];
      auto& slots = row.residual_last[static_cast<std::size_t>(i - 1)];
      slots.assign(z.size(), 0);
      for (std::size_t r = 0; r < z.size(); ++r) {
        Itemset rest(z.begin() + static_cast<std::ptrdiff_t>(r), z.end());
        int q = next_start - 1;
        while (q >= 1 && !itemset_subset(rest, S.itemset_at(q))) --q;
        slots[r] = q;  // q >= 1 is guaranteed for r = 0 since T is contained
      }
      next_start = slots[0];
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

bool is_promising(int ep, ItemId ext_item, const PrefixState& st, const LiRow& row,
                  const Pattern& target) {
  if (st.suffix_empty) return true;
  const auto& slots = row.residual_last[static_cast<std::size_t>(st.suffix_start - 1)];
  const int last = slots[static_cast<std::size_t>(st.residual_start)];
  if (st.residual_start > 0) {
    // Residual items all exceed ext_item, so a hit inside itemset ep
    // itself still lands after the extension item.
    return last >= ep;
  }
  if (last > ep) return true;
  if (last != ep) return false;
  const Itemset& z = target.itemsets[static_cast<std::size_t>(st.suffix_start - 1)];
  return z.front() > ext_item;
}

}  // namespace tusq
