#include "tusq/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tusq {

namespace {

bool parse_int(std::string_view tok, long long& out) {
  if (tok.empty()) return false;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void finish_itemset(QItemset& current, QSequence& seq, int line_no) {
  if (current.items.empty()) throw ParseError("empty itemset", line_no);
  std::sort(current.items.begin(), current.items.end(),
            [](const QItem& a, const QItem& b) { return a.item < b.item; });
  for (std::size_t k = 1; k < current.items.size(); ++k)
    if (current.items[k].item == current.items[k - 1].item)
      throw ParseError("duplicate item " + std::to_string(current.items[k].item) +
                           " in itemset",
                       line_no);
  seq.itemsets.push_back(std::move(current));
  current = QItemset{};
}

UtilityTable parse_utility_table(std::istream& utils) {
  UtilityTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(utils, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 2) throw ParseError("expected `item profit`", line_no);
    long long item = 0;
    long long profit = 0;
    if (!parse_int(toks[0], item) || item < 0)
      throw ParseError("invalid item id", line_no);
    if (!parse_int(toks[1], profit) || profit < 0)
      throw ParseError("invalid profit (non-negative integer required)", line_no);
    auto [it, inserted] = table.profit.emplace(static_cast<ItemId>(item), profit);
    if (!inserted) throw ParseError("duplicate utility entry for item " + std::to_string(item),
                                    line_no);
  }
  return table;
}

}  // namespace

QDatabase parse_database_streams(std::istream& data, std::istream& utils) {
  QDatabase db;
  db.utilities = parse_utility_table(utils);
  std::string line;
  int line_no = 0;
  int sid = 0;
  while (std::getline(data, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    QSequence seq;
    QItemset current;
    bool ended = false;
    for (auto tok : toks) {
      if (ended) throw ParseError("tokens after -2", line_no);
      if (tok == "-1") {
        finish_itemset(current, seq, line_no);
        continue;
      }
      if (tok == "-2") {
        if (!current.items.empty()) finish_itemset(current, seq, line_no);
        if (seq.itemsets.empty()) throw ParseError("empty sequence", line_no);
        ended = true;
        continue;
      }
      std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError("expected item:qty token, got `" + std::string(tok) + "`", line_no);
      long long item = 0;
      long long qty = 0;
      if (!parse_int(tok.substr(0, colon), item) || item < 0 || item > INT32_MAX)
        throw ParseError("invalid item id in `" + std::string(tok) + "`", line_no);
      if (!parse_int(tok.substr(colon + 1), qty) || qty < 1 || qty > INT32_MAX)
        throw ParseError("invalid quantity in `" + std::string(tok) + "`", line_no);
      if (!db.utilities.known(static_cast<ItemId>(item)))
        throw ParseError("item " + std::to_string(item) + " missing from utility table",
                         line_no);
      current.items.push_back(QItem{static_cast<ItemId>(item), static_cast<int32_t>(qty)});
    }
    if (!ended) throw ParseError("missing -2 terminator", line_no);
    seq.sid = ++sid;
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

QDatabase parse_database(const std::string& data_path, const std::string& utility_path) {
  std::ifstream utils(utility_path);
  if (!utils) throw ParseError("cannot open utility file " + utility_path);
  std::ifstream data(data_path);
  if (!data) throw ParseError("cannot open data file " + data_path);
  return parse_database_streams(data, utils);
}

std::string serialize_sequence(const QSequence& S) {
  std::ostringstream out;
  bool first_set = true;
  for (const auto& X : S.itemsets) {
    if (!first_set) out << " -1 ";
    first_set = false;
    bool first = true;
    for (const auto& q : X.items) {
      if (!first) out << ' ';
      first = false;
      out << q.item << ':' << q.quantity;
    }
  }
  out << " -2";
  return out.str();
}

void serialize_database(const QDatabase& db, std::ostream& data, std::ostream& utils) {
  for (const auto& S : db.sequences) data << serialize_sequence(S) << '\n';
  std::vector<ItemId> items;
  items.reserve(db.utilities.profit.size());
  for (const auto& [id, p] : db.utilities.profit) items.push_back(id);
  std::sort(items.begin(), items.end());
  for (ItemId id : items) utils << id << ' ' << db.utilities.profit.at(id) << '\n';
}

namespace {

Itemset finish_plain(std::vector<ItemId>& items) {
  if (items.empty()) throw ParseError("empty itemset in target");
  std::sort(items.begin(), items.end());
  for (std::size_t k = 1; k < items.size(); ++k)
    if (items[k] == items[k - 1])
      throw ParseError("duplicate item " + std::to_string(items[k]) + " in target itemset");
  Itemset out;
  out.swap(items);
  return out;
}

}  // namespace

Pattern parse_target(const std::string& spec) {
  Pattern p;
  if (spec.find('|') != std::string::npos) {
    std::string chunk;
    std::istringstream in(spec);
    while (std::getline(in, chunk, '|')) {
      std::vector<ItemId> items;
      for (auto tok : split_ws(chunk)) {
        long long v = 0;
        if (!parse_int(tok, v) || v < 0 || v > INT32_MAX) throw ParseError("invalid target item `" +
                                                          std::string(tok) + "`");
        items.push_back(static_cast<ItemId>(v));
      }
      p.itemsets.push_back(finish_plain(items));
    }
  } else {
    std::vector<ItemId> items;
    bool ended = false;
    for (auto tok : split_ws(spec)) {
      if (ended) throw ParseError("tokens after -2 in target");
      if (tok == "-1") {
        p.itemsets.push_back(finish_plain(items));
        continue;
      }
      if (tok == "-2") {
        if (!items.empty()) p.itemsets.push_back(finish_plain(items));
        ended = true;
        continue;
      }
      long long v = 0;
      if (!parse_int(tok, v) || v < 0 || v > INT32_MAX)
        throw ParseError("invalid target item `" + std::string(tok) + "`");
      items.push_back(static_cast<ItemId>(v));
    }
    if (!items.empty()) p.itemsets.push_back(finish_plain(items));
  }
  if (p.itemsets.empty()) throw ParseError("empty target");
  return p;
}

std::string serialize_pattern(const Pattern& p) {
  std::ostringstream out;
  bool first_set = true;
  for (const auto& x : p.itemsets) {
    if (!first_set) out << '|';
    first_set = false;
    bool first = true;
    for (ItemId id : x) {
      if (!first) out << ' ';
      first = false;
      out << id;
    }
  }
  return out.str();
}

std::uint64_t Rng::next() {
  // splitmix64
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

namespace {

int geometric_around(double mean, Rng& rng, int clip) {
  if (mean <= 1.0 || clip <= 1) return 1;
  double cont = 1.0 - 1.0 / mean;
  auto thr = static_cast<std::uint64_t>(cont * 18446744073709551615.0);
  int k = 1;
  while (k < clip && rng.next() < thr) ++k;
  return k;
}

}  // namespace

QDatabase generate_synthetic(const GeneratorParams& params) {
  if (params.num_sequences < 1 || params.alphabet_size < 1 || params.max_qty < 1 ||
      params.max_profit < 1 || params.avg_itemsets < 1.0 || params.avg_items_per_itemset < 1.0)
    throw std::invalid_argument("generator parameters must be positive");
  Rng rng(params.rng_seed);
  QDatabase db;
  for (ItemId id = 1; id <= params.alphabet_size; ++id)
    db.utilities.profit[id] = 1 + static_cast<Utility>(rng.below(
                                      static_cast<std::uint64_t>(params.max_profit)));
  const int set_clip = std::max(1, static_cast<int>(std::ceil(params.avg_itemsets * 4.0)));
  const int item_clip = std::min(
      params.alphabet_size,
      std::max(1, static_cast<int>(std::ceil(params.avg_items_per_itemset * 4.0))));
  for (long long n = 0; n < params.num_sequences; ++n) {
    QSequence seq;
    seq.sid = static_cast<int>(n + 1);
    int sets = geometric_around(params.avg_itemsets, rng, set_clip);
    for (int s = 0; s < sets; ++s) {
      int count = geometric_around(params.avg_items_per_itemset, rng, item_clip);
      std::vector<ItemId> chosen;
      if (count * 2 >= params.alphabet_size) {
        std::vector<ItemId> all(static_cast<std::size_t>(params.alphabet_size));
        for (int i = 0; i < params.alphabet_size; ++i) all[static_cast<std::size_t>(i)] = i + 1;
        for (int i = 0; i < count; ++i) {
          auto j = i + static_cast<int>(rng.below(
                           static_cast<std::uint64_t>(params.alphabet_size - i)));
          std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
          chosen.push_back(all[static_cast<std::size_t>(i)]);
        }
      } else {
        while (static_cast<int>(chosen.size()) < count) {
          auto id = static_cast<ItemId>(
              1 + rng.below(static_cast<std::uint64_t>(params.alphabet_size)));
          if (std::find(chosen.begin(), chosen.end(), id) == chosen.end()) chosen.push_back(id);
        }
      }
      std::sort(chosen.begin(), chosen.end());
      QItemset X;
      for (ItemId id : chosen)
        X.items.push_back(QItem{
            id, static_cast<int32_t>(1 + rng.below(static_cast<std::uint64_t>(params.max_qty)))});
      seq.itemsets.push_back(std::move(X));
    }
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

}  // namespace tusq
