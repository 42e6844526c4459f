#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "tusq/core.hpp"

namespace tusq {

struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(const std::string& what, int line_no)
      : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Data file: one q-sequence per line of whitespace-separated tokens.
/// `item:qty` adds a q-item to the current itemset, `-1` closes an
/// itemset, `-2` ends the sequence (closing a trailing itemset). Lines
/// starting with `#` are comments. Items inside an itemset may appear in
/// any order on disk; the parser sorts them and rejects duplicates.
/// Utility file: one `item profit` pair per line. Every item used by the
/// data must have a profit entry. SIDs are assigned 1..n in file order.
QDatabase parse_database(const std::string& data_path, const std::string& utility_path);
QDatabase parse_database_streams(std::istream& data, std::istream& utils);

void serialize_database(const QDatabase& db, std::ostream& data, std::ostream& utils);
std::string serialize_sequence(const QSequence& S);

/// Accepts either the token grammar without quantities
/// (`1 3 -1 5 -2`) or the pipe form (`1|3 5|1`) with `|` separating
/// itemsets and spaces separating items.
Pattern parse_target(const std::string& spec);

/// Pipe form used in result files.
std::string serialize_pattern(const Pattern& p);

struct GeneratorParams {
  long long num_sequences = 0;
  int alphabet_size = 0;
  double avg_itemsets = 1.0;
  double avg_items_per_itemset = 1.0;
  int max_qty = 1;
  int max_profit = 1;
  std::uint64_t rng_seed = 0;
};

/// Deterministic synthetic database: itemset counts and sizes from
/// clipped geometric distributions around the averages, quantities and
/// profits uniform in [1, max].
QDatabase generate_synthetic(const GeneratorParams& params);

/// Small deterministic generator (splitmix64 core) so synthetic data is
/// reproducible across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
};

}  // namespace tusq
