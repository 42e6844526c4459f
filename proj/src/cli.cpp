#include "tusq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tusq/io.hpp"
#include "tusq/miner.hpp"
#include "tusq/reference.hpp"

namespace tusq {

namespace {

int env_threads() {
  const char* v = std::getenv("TUSQ_THREADS");
  if (v == nullptr) return 1;
  int n = std::atoi(v);
  return n >= 1 ? n : 1;
}

nlohmann::json stats_json(const MiningStats& st, const std::string& algorithm,
                          const std::string& xi) {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["xi"] = xi;
  j["u_dt"] = st.u_dt;
  j["threshold_num"] = st.threshold_num;
  j["threshold_den"] = st.threshold_den;
  j["candidates"] = st.candidates;
  j["pruned_width"] = st.pruned_width;
  j["pruned_depth"] = st.pruned_depth;
  j["num_queries"] = st.num_queries;
  j["post_filtered"] = st.post_filtered;
  j["elapsed_ms"] = st.elapsed_ms;
  j["peak_memory_kb"] = st.peak_memory_kb;  // informational, platform dependent
  j["threads"] = st.threads;
  return j;
}

void write_results(const ResultSet& rs, const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : rs.entries)
      arr.push_back({{"pattern", serialize_pattern(e.pattern)}, {"utility", e.utility}});
    out << arr.dump(2) << '\n';
    return;
  }
  out << "pattern,utility\n";
  for (const auto& e : rs.entries)
    out << serialize_pattern(e.pattern) << ',' << e.utility << '\n';
}

struct MineArgs {
  std::string db;
  std::string utils;
  std::string target;
  std::string xi;
  std::string out_path;
  std::string format = "csv";
  std::string stats_path;
  bool no_sru = false;
  bool no_tdu = false;
};

void add_io_options(CLI::App* cmd, MineArgs& a, bool with_target = true) {
  cmd->add_option("--db", a.db, "data file")->required();
  cmd->add_option("--utils", a.utils, "utility table file")->required();
  if (with_target) cmd->add_option("--target", a.target, "target sequence")->required();
}

int finish_results(const MineArgs& a, const ResultSet& rs, const MiningStats& st,
                   const std::string& algorithm, std::ostream& out, std::ostream& err) {
  if (a.out_path.empty()) {
    write_results(rs, a.format, out);
  } else {
    std::ofstream f(a.out_path);
    if (!f) {
      err << "cannot open output file " << a.out_path << '\n';
      return 1;
    }
    write_results(rs, a.format, f);
  }
  if (!a.stats_path.empty()) {
    std::ofstream f(a.stats_path);
    if (!f) {
      err << "cannot open stats file " << a.stats_path << '\n';
      return 1;
    }
    f << stats_json(st, algorithm, a.xi).dump(2) << '\n';
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"targeted high-utility sequence query miner"};
  app.require_subcommand(1);

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "mine utility-driven targeted queries (TUSQ)");
  add_io_options(mine_cmd, mine_args);
  mine_cmd->add_option("--xi", mine_args.xi, "minimum utility threshold ratio")->required();
  mine_cmd->add_option("--out", mine_args.out_path, "result file (default stdout)");
  mine_cmd->add_option("--format", mine_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  mine_cmd->add_option("--stats", mine_args.stats_path, "stats JSON file");
  mine_cmd->add_flag("--no-sru", mine_args.no_sru, "disable depth pruning");
  mine_cmd->add_flag("--no-tdu", mine_args.no_tdu, "disable width pruning");

  MineArgs base_args;
  auto* base_cmd = app.add_subcommand("baseline", "mine with the HUS-UTQ baseline");
  add_io_options(base_cmd, base_args);
  base_cmd->add_option("--xi", base_args.xi, "minimum utility threshold ratio")->required();
  base_cmd->add_option("--out", base_args.out_path, "result file (default stdout)");
  base_cmd->add_option("--format", base_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  base_cmd->add_option("--stats", base_args.stats_path, "stats JSON file");

  MineArgs oracle_args;
  int oracle_max_len = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive reference miner");
  add_io_options(oracle_cmd, oracle_args);
  oracle_cmd->add_option("--xi", oracle_args.xi, "minimum utility threshold ratio")->required();
  oracle_cmd->add_option("--max-len", oracle_max_len, "pattern length cap in items")
      ->required();
  oracle_cmd->add_option("--out", oracle_args.out_path, "result file (default stdout)");
  oracle_cmd->add_option("--format", oracle_args.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  MineArgs verify_args;
  int verify_max_len = 0;
  auto* verify_cmd = app.add_subcommand("verify", "compare mine against the oracle");
  add_io_options(verify_cmd, verify_args);
  verify_cmd->add_option("--xi", verify_args.xi, "minimum utility threshold ratio")->required();
  verify_cmd->add_option("--max-len", verify_max_len, "pattern length cap in items")
      ->required();

  struct BenchArgs {
    std::string db;
    std::string utils;
    std::string targets_path;
    std::string xi_list;
    std::string algos = "tusq,husutq";
    int repeat = 1;
  } bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "benchmark report (CSV on stdout)");
  bench_cmd->add_option("--db", bench_args.db)->required();
  bench_cmd->add_option("--utils", bench_args.utils)->required();
  bench_cmd->add_option("--targets", bench_args.targets_path, "file with one target per line")
      ->required();
  bench_cmd->add_option("--xi-list", bench_args.xi_list, "comma-separated ratios")->required();
  bench_cmd->add_option("--algos", bench_args.algos, "comma-separated: tusq,husutq");
  bench_cmd->add_option("--repeat", bench_args.repeat, "runs per combination (min time wins)")
      ->check(CLI::PositiveNumber);

  struct GenArgs {
    std::string out_db;
    std::string out_utils;
    long long sequences = 1000;
    int alphabet = 100;
    double avg_itemsets = 4.0;
    double avg_items = 2.0;
    int max_qty = 5;
    int max_profit = 5;
    std::uint64_t seed = 1;
  } gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic database");
  gen_cmd->add_option("--out-db", gen_args.out_db)->required();
  gen_cmd->add_option("--out-utils", gen_args.out_utils)->required();
  gen_cmd->add_option("--sequences", gen_args.sequences)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--alphabet", gen_args.alphabet)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--avg-itemsets", gen_args.avg_itemsets);
  gen_cmd->add_option("--avg-items", gen_args.avg_items);
  gen_cmd->add_option("--max-qty", gen_args.max_qty)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-profit", gen_args.max_profit)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_args.seed);

  std::vector<std::string> argv(args);
  try {
    std::vector<const char*> raw;
    raw.push_back("tusq");
    for (const auto& a : argv) raw.push_back(a.c_str());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage;
    int code = app.exit(e, usage, usage);
    (code == 0 ? out : err) << usage.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (mine_cmd->parsed()) {
      auto db = parse_database(mine_args.db, mine_args.utils);
      Pattern target = parse_target(mine_args.target);
      MiningConfig cfg;
      cfg.xi = parse_xi(mine_args.xi);
      cfg.disable_sru = mine_args.no_sru;
      cfg.disable_tdu = mine_args.no_tdu;
      cfg.threads = env_threads();
      auto [rs, st] = mine(db, target, cfg);
      return finish_results(mine_args, rs, st, "tusq", out, err);
    }
    if (base_cmd->parsed()) {
      auto db = parse_database(base_args.db, base_args.utils);
      Pattern target = parse_target(base_args.target);
      auto [rs, st] = husutq_mine(db, target, parse_xi(base_args.xi), env_threads());
      return finish_results(base_args, rs, st, "husutq", out, err);
    }
    if (oracle_cmd->parsed()) {
      auto db = parse_database(oracle_args.db, oracle_args.utils);
      Pattern target = parse_target(oracle_args.target);
      OracleConfig ocfg{oracle_max_len};
      ResultSet rs = oracle_mine(db, target, parse_xi(oracle_args.xi), ocfg);
      MiningStats st;
      st.num_queries = static_cast<long long>(rs.entries.size());
      return finish_results(oracle_args, rs, st, "oracle", out, err);
    }
    if (verify_cmd->parsed()) {
      auto db = parse_database(verify_args.db, verify_args.utils);
      Pattern target = parse_target(verify_args.target);
      XiValue xi = parse_xi(verify_args.xi);
      MiningConfig cfg;
      cfg.xi = xi;
      cfg.max_pattern_length = verify_max_len;
      cfg.threads = env_threads();
      auto [mined, st] = mine(db, target, cfg);
      ResultSet expected = oracle_mine(db, target, xi, OracleConfig{verify_max_len});
      if (mined == expected) {
        out << "verify: OK, " << mined.entries.size() << " queries\n";
        return 0;
      }
      err << "verify: MISMATCH (mine " << mined.entries.size() << " vs oracle "
          << expected.entries.size() << " queries)\n";
      return 4;
    }
    if (bench_cmd->parsed()) {
      auto db = parse_database(bench_args.db, bench_args.utils);
      std::ifstream tf(bench_args.targets_path);
      if (!tf) throw ParseError("cannot open targets file " + bench_args.targets_path);
      std::vector<Pattern> targets;
      std::string line;
      while (std::getline(tf, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        targets.push_back(parse_target(trimmed));
      }
      if (targets.empty()) throw ParseError("no targets in " + bench_args.targets_path);
      auto xis = split_list(bench_args.xi_list);
      auto algos = split_list(bench_args.algos);
      for (const auto& a : algos)
        if (a != "tusq" && a != "husutq")
          throw CLI::ValidationError("--algos", "unknown algorithm " + a);
      out << "dataset,target_id,xi,algorithm,runtime_ms,candidates,pruned_width,"
             "pruned_depth,num_queries,u_dt\n";
      std::size_t executed = 0;
      for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        if (!std::any_of(db.sequences.begin(), db.sequences.end(),
                         [&](const QSequence& S) { return contains(targets[ti], S); })) {
          err << "bench: target " << (ti + 1) << " absent from the database, skipped\n";
          continue;
        }
        for (const auto& xs : xis)
          for (const auto& algo : algos) {
            XiValue xi = parse_xi(xs);
            ResultSet rs;
            MiningStats st;
            double best_ms = 0.0;
            for (int rep = 0; rep < bench_args.repeat; ++rep) {
              auto t0 = std::chrono::steady_clock::now();
              if (algo == "tusq") {
                MiningConfig cfg;
                cfg.xi = xi;
                cfg.threads = env_threads();
                std::tie(rs, st) = mine(db, targets[ti], cfg);
              } else {
                std::tie(rs, st) = husutq_mine(db, targets[ti], xi, env_threads());
              }
              double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
              if (rep == 0 || ms < best_ms) best_ms = ms;
            }
            out << bench_args.db << ',' << (ti + 1) << ',' << xs << ',' << algo << ','
                << best_ms << ',' << st.candidates << ',' << st.pruned_width << ','
                << st.pruned_depth << ',' << st.num_queries << ',' << st.u_dt << '\n';
            ++executed;
          }
      }
      if (executed == 0) throw TargetAbsentError("no bench target present in the database");
      return 0;
    }
    if (gen_cmd->parsed()) {
      GeneratorParams p;
      p.num_sequences = gen_args.sequences;
      p.alphabet_size = gen_args.alphabet;
      p.avg_itemsets = gen_args.avg_itemsets;
      p.avg_items_per_itemset = gen_args.avg_items;
      p.max_qty = gen_args.max_qty;
      p.max_profit = gen_args.max_profit;
      p.rng_seed = gen_args.seed;
      QDatabase db = generate_synthetic(p);
      std::ofstream fdb(gen_args.out_db);
      std::ofstream fut(gen_args.out_utils);
      if (!fdb || !fut) {
        err << "cannot open output files\n";
        return 1;
      }
      serialize_database(db, fdb, fut);
      out << "generated " << db.sequences.size() << " sequences over alphabet "
          << gen_args.alphabet << '\n';
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const TargetAbsentError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace tusq
