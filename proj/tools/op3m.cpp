// Copyright 2026 The op3m Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// op3m command-line front end.
//
// Exit status: 0 success, 1 miner/oracle disagreement, 2 bad input or
// arguments, 3 dataset too large for the oracle.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "op3m/database.hpp"
#include "op3m/generator.hpp"
#include "op3m/miner.hpp"
#include "op3m/opp_list.hpp"
#include "op3m/oracle.hpp"

namespace {

using namespace op3m;

constexpr int kOk = 0;
constexpr int kDiff = 1;
constexpr int kBadInput = 2;
constexpr int kOverCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputFlags {
  std::string transactions;
  std::string profits;
  std::string format = "native";
  bool merge_duplicates = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-t,--transactions", transactions, "transaction file")->required();
    cmd->add_option("-p,--profits", profits, "unit-profit table (native format)");
    cmd->add_option("--format", format, "input format")->check(CLI::IsMember({"native", "spmf-period"}));
    cmd->add_flag("--merge-duplicates", merge_duplicates, "sum repeated items within a transaction");
  }

  Database load() const {
    std::ifstream tx(transactions);
    if (!tx) throw UsageError("cannot open " + transactions);
    LoadOptions opts{.merge_duplicates = merge_duplicates};
    if (format == "spmf-period") return load_spmf_period(tx, opts);
    if (profits.empty()) throw UsageError("profit table required");
    std::ifstream pt_in(profits);
    if (!pt_in) throw UsageError("cannot open " + profits);
    ProfitTable pt = parse_profit_table(pt_in);
    return load_transactions(tx, pt, opts);
  }
};

struct MiningFlags {
  std::string minfre = "0";
  std::string minpro = "0";
  std::string scope = "global";
  int threads = 1;
  bool no_prune_freq = false;
  bool no_prune_rpp = false;
  bool no_prune_pairs = false;

  void add_to(CLI::App* cmd, bool thresholds = true) {
    if (thresholds) {
      cmd->add_option("--minfre", minfre, "per-period relative frequency threshold");
      cmd->add_option("--minpro", minpro, "relative profit threshold");
    }
    cmd->add_option("--scope", scope, "profit test scope")->check(CLI::IsMember({"global", "per-period"}));
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-prune-freq", no_prune_freq);
    cmd->add_flag("--no-prune-rpp", no_prune_rpp);
    cmd->add_flag("--no-prune-pairs", no_prune_pairs);
  }

  MiningParams params() const { return params(minfre, minpro); }

  MiningParams params(const std::string& fre, const std::string& pro) const {
    MiningParams p;
    p.minfre = Threshold::parse(fre);
    p.minpro = Threshold::parse(pro);
    p.scope = parse_scope(scope);
    p.threads = threads;
    p.prune_freq = !no_prune_freq;
    p.prune_rpp = !no_prune_rpp;
    p.prune_pairs = !no_prune_pairs;
    p.validate();
    return p;
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

// --- mine ---

int run_mine(const InputFlags& in, const MiningFlags& mf, const std::string& out_path, bool stats) {
  Database db = in.load();
  MineOutput out = mine(db, mf.params());
  if (out_path.empty() || out_path == "-") {
    write_results(std::cout, out.patterns);
  } else {
    auto f = open_out(out_path);
    write_results(f, out.patterns);
  }
  std::fprintf(stderr, "%zu patterns in %.3f s\n", out.patterns.size(), out.stats.wall_seconds);
  if (stats) {
    const MineStats& s = out.stats;
    std::fprintf(stderr,
                 "items %llu promising %llu visited %llu joins %llu pruned freq %llu rpp %llu pairs %llu "
                 "zero-top %llu peak lists %llu peak bytes %llu scans %llu\n",
                 (unsigned long long)s.items, (unsigned long long)s.promising_items,
                 (unsigned long long)s.visited_nodes, (unsigned long long)s.constructed_lists,
                 (unsigned long long)s.pruned_freq, (unsigned long long)s.pruned_rpp,
                 (unsigned long long)s.pruned_pairs, (unsigned long long)s.skipped_nonpositive_top,
                 (unsigned long long)s.peak_resident_lists, (unsigned long long)s.peak_resident_bytes,
                 (unsigned long long)s.scans);
  }
  return kOk;
}

// --- oracle-check ---

struct CheckFlags {
  int fuzz = 0;
  std::int64_t max_items = 12;
  std::int64_t max_transactions = 40;
  std::int64_t max_periods = 4;
  double negative = 0.2;
  std::uint64_t seed = 0;
  std::size_t item_cap = 20;
  bool corrupt = false;
};

// Compares one database; prints the diff and returns false on mismatch.
bool check_one(const Database& db, const MiningParams& p, const CheckFlags& cf, const std::string& label) {
  oracle::Options opt;
  opt.item_cap = cf.item_cap;
  opt.threads = p.threads;
  oracle::Report truth = oracle::enumerate(db, p, opt);
  MineOutput got = mine(db, p);
  // Self-test of the harness: drop one pattern so the diff must fire.
  if (cf.corrupt && !got.patterns.empty()) got.patterns.pop_back();
  oracle::Diff d = oracle::diff(got.patterns, truth.patterns);
  if (d.empty()) return true;
  std::cout << label << ": " << d.mismatches.size() << " mismatches (left = miner, right = oracle)\n" << d.to_string();
  return false;
}

int run_oracle_check(const InputFlags& in, bool have_input, const MiningFlags& mf, const CheckFlags& cf) {
  MiningParams p = mf.params();
  bool ok = true;
  if (cf.fuzz > 0) {
    if (have_input) throw UsageError("--fuzz replaces the input files");
    if (cf.max_items > static_cast<std::int64_t>(cf.item_cap))
      throw oracle::CapExceeded("--max-items " + std::to_string(cf.max_items) + " exceeds oracle cap " +
                                std::to_string(cf.item_cap));
    for (int k = 0; k < cf.fuzz; ++k) {
      std::uint64_t seed = cf.seed + static_cast<std::uint64_t>(k);
      gen::Dataset data = gen::random_small(seed, cf.max_items, cf.max_transactions, cf.max_periods, cf.negative);
      Database db = Database::from_raw(data.transactions, data.profits);
      ok = check_one(db, p, cf, "seed " + std::to_string(seed)) && ok;
    }
    std::fprintf(stderr, "%d databases checked\n", cf.fuzz);
  } else {
    if (!have_input) throw UsageError("give -t/-p or --fuzz N");
    Database db = in.load();
    ok = check_one(db, p, cf, in.transactions);
  }
  std::fprintf(stderr, ok ? "miner agrees with oracle\n" : "miner disagrees with oracle\n");
  return ok ? kOk : kDiff;
}

// --- gen / regroup ---

int run_gen(const gen::GenConfig& config, const std::string& tx_path, const std::string& pt_path) {
  gen::Dataset data = gen::generate(config);
  auto tx = open_out(tx_path);
  write_transactions(tx, data.transactions);
  auto pt = open_out(pt_path);
  write_profit_table(pt, data.profits);
  return kOk;
}

int run_regroup(const std::string& in_path, const std::string& out_path, std::int64_t periods, std::uint64_t seed) {
  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot open " + in_path);
  auto txs = gen::regroup(parse_transactions(in), periods, seed);
  auto out = open_out(out_path);
  write_transactions(out, txs);
  return kOk;
}

// --- bench ---

struct BenchFlags {
  std::string minfre = "0.1";
  std::string minpro = "0.1";
  std::string prefixes;  // transaction counts; empty means the whole file
  std::string periods;   // regroup targets; empty means as loaded
  std::uint64_t seed = 7;
  int repeat = 1;
  std::string dataset;
};

Database take_prefix(const Database& db, std::size_t n) {
  auto txs = db.transactions();
  return Database::from_profits({txs.begin(), txs.begin() + static_cast<std::ptrdiff_t>(std::min(n, txs.size()))});
}

Database regroup_db(const Database& db, std::int64_t periods, std::uint64_t seed) {
  std::vector<Transaction> txs(db.transactions().begin(), db.transactions().end());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PeriodId> pick(1, periods);
  for (auto& t : txs) t.period = pick(rng);
  return Database::from_profits(std::move(txs));
}

int run_bench(const InputFlags& in, const MiningFlags& mf, const BenchFlags& bf, const std::string& out_path) {
  auto out = open_out(out_path);
  out << "dataset,transactions,periods,minfre,minpro,scope,threads,run,patterns,wall_seconds,"
         "peak_resident_bytes,visited_nodes,constructed_lists,pruned_freq,pruned_rpp,pruned_pairs\n";
  auto fres = split_list(bf.minfre);
  auto pros = split_list(bf.minpro);
  if (fres.empty() || pros.empty()) return kOk;  // nothing to sweep

  Database full = in.load();
  std::vector<std::size_t> sizes;
  for (const auto& s : split_list(bf.prefixes)) sizes.push_back(std::stoull(s));
  if (sizes.empty()) sizes.push_back(full.size());
  std::sort(sizes.begin(), sizes.end());
  std::vector<std::int64_t> regroups;
  for (const auto& s : split_list(bf.periods)) regroups.push_back(std::stoll(s));
  if (regroups.empty()) regroups.push_back(0);

  const std::string name = bf.dataset.empty() ? in.transactions : bf.dataset;
  for (std::size_t n : sizes) {
    Database prefix = take_prefix(full, n);
    for (std::int64_t g : regroups) {
      Database db = g > 0 ? regroup_db(prefix, g, bf.seed) : prefix;
      for (const auto& fre : fres)
        for (const auto& pro : pros)
          for (int r = 0; r < bf.repeat; ++r) {
            MiningParams p = mf.params(fre, pro);
            MineOutput res = mine(db, p);
            const MineStats& s = res.stats;
            out << name << ',' << db.size() << ',' << db.period_count() << ',' << fre << ',' << pro << ','
                << to_string(p.scope) << ',' << p.threads << ',' << r << ',' << res.patterns.size() << ','
                << s.wall_seconds << ',' << s.peak_resident_bytes << ',' << s.visited_nodes << ','
                << s.constructed_lists << ',' << s.pruned_freq << ',' << s.pruned_rpp << ',' << s.pruned_pairs
                << '\n';
            out.flush();
          }
    }
  }
  return kOk;
}

// --- dump-list ---

int run_dump(const InputFlags& in, const std::string& items) {
  Database db = in.load();
  std::vector<ItemId> ids;
  std::istringstream ss(items);
  for (std::string tok; ss >> tok;) ids.push_back(static_cast<ItemId>(std::stoul(tok)));
  if (ids.empty()) throw UsageError("--items is empty");
  ItemOrder order = build_item_order(db);
  for (ItemId i : ids)
    if (!order.contains(i)) throw UsageError("item " + std::to_string(i) + " does not occur");
  build_list(ItemSet(ids), db, order).dump(std::cout, db);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"op3m: on-shelf popular and profitable itemset miner"};
  app.require_subcommand(1);

  InputFlags mine_in;
  MiningFlags mine_mf;
  std::string mine_out;
  bool mine_stats = false;
  auto* mine_cmd = app.add_subcommand("mine", "mine popular and profitable itemsets");
  mine_in.add_to(mine_cmd);
  mine_mf.add_to(mine_cmd);
  mine_cmd->add_option("-o,--output", mine_out, "pattern file (default stdout)");
  mine_cmd->add_flag("--stats", mine_stats, "print search counters");

  InputFlags check_in;
  MiningFlags check_mf;
  CheckFlags cf;
  auto* check_cmd = app.add_subcommand("oracle-check", "compare the miner against brute force");
  check_cmd->add_option("-t,--transactions", check_in.transactions);
  check_cmd->add_option("-p,--profits", check_in.profits);
  check_cmd->add_option("--format", check_in.format)->check(CLI::IsMember({"native", "spmf-period"}));
  check_cmd->add_flag("--merge-duplicates", check_in.merge_duplicates);
  check_mf.add_to(check_cmd);
  check_cmd->add_option("--fuzz", cf.fuzz, "number of random databases")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--max-items", cf.max_items)->check(CLI::PositiveNumber);
  check_cmd->add_option("--max-transactions", cf.max_transactions)->check(CLI::PositiveNumber);
  check_cmd->add_option("--max-periods", cf.max_periods)->check(CLI::PositiveNumber);
  check_cmd->add_option("--negative", cf.negative, "fraction of loss-making items")->check(CLI::Range(0.0, 1.0));
  check_cmd->add_option("--seed", cf.seed, "first fuzz seed");
  check_cmd->add_option("--item-cap", cf.item_cap, "oracle refuses larger item counts");
  check_cmd->add_flag("--corrupt", cf.corrupt, "drop a miner result (harness self-test)");

  gen::GenConfig gc;
  std::string gen_tx, gen_pt;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset");
  gen_cmd->add_option("-t,--transactions", gen_tx, "output transaction file")->required();
  gen_cmd->add_option("-p,--profits", gen_pt, "output profit table")->required();
  gen_cmd->add_option("--count", gc.n_transactions, "transactions");
  gen_cmd->add_option("--items", gc.n_items);
  gen_cmd->add_option("--avg-length", gc.avg_transaction_length);
  gen_cmd->add_option("--quantity-min", gc.quantity_min);
  gen_cmd->add_option("--quantity-max", gc.quantity_max);
  gen_cmd->add_option("--profit-min", gc.profit_min);
  gen_cmd->add_option("--profit-max", gc.profit_max);
  gen_cmd->add_option("--negative", gc.negative_fraction, "fraction of loss-making items");
  gen_cmd->add_option("--periods", gc.n_periods);
  gen_cmd->add_option("--period-skew", gc.period_skew);
  gen_cmd->add_option("--item-skew", gc.item_skew);
  gen_cmd->add_option("--seasonality", gc.seasonality);
  gen_cmd->add_option("--seed", gc.seed);

  std::string rg_in, rg_out;
  std::int64_t rg_periods = 5;
  std::uint64_t rg_seed = 7;
  auto* regroup_cmd = app.add_subcommand("regroup", "reassign transactions to random periods");
  regroup_cmd->add_option("-t,--transactions", rg_in)->required();
  regroup_cmd->add_option("-o,--output", rg_out)->required();
  regroup_cmd->add_option("--periods", rg_periods)->check(CLI::PositiveNumber);
  regroup_cmd->add_option("--seed", rg_seed);

  InputFlags bench_in;
  MiningFlags bench_mf;
  BenchFlags bf;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "sweep thresholds, prefixes and period counts into CSV");
  bench_in.add_to(bench_cmd);
  bench_mf.add_to(bench_cmd, false);
  bench_cmd->add_option("--minfre", bf.minfre, "comma list");
  bench_cmd->add_option("--minpro", bf.minpro, "comma list");
  bench_cmd->add_option("--prefixes", bf.prefixes, "comma list of transaction counts");
  bench_cmd->add_option("--regroup", bf.periods, "comma list of period counts");
  bench_cmd->add_option("--seed", bf.seed, "regroup seed");
  bench_cmd->add_option("--repeat", bf.repeat)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--name", bf.dataset, "dataset label in the CSV");
  bench_cmd->add_option("-o,--output", bench_out)->required();

  InputFlags dump_in;
  std::string dump_items;
  auto* dump_cmd = app.add_subcommand("dump-list", "print the OPP-list of an itemset as TSV");
  dump_in.add_to(dump_cmd);
  dump_cmd->add_option("--items", dump_items, "space-separated item ids")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*mine_cmd) return run_mine(mine_in, mine_mf, mine_out, mine_stats);
    if (*check_cmd) {
      bool have_input = !check_in.transactions.empty();
      return run_oracle_check(check_in, have_input, check_mf, cf);
    }
    if (*gen_cmd) return run_gen(gc, gen_tx, gen_pt);
    if (*regroup_cmd) return run_regroup(rg_in, rg_out, rg_periods, rg_seed);
    if (*bench_cmd) return run_bench(bench_in, bench_mf, bf, bench_out);
    if (*dump_cmd) return run_dump(dump_in, dump_items);
  } catch (const oracle::CapExceeded& e) {
    std::cerr << "op3m: " << e.what() << '\n';
    return kOverCap;
  } catch (const InputError& e) {
    std::cerr << "op3m: " << e.what() << '\n';
    return kBadInput;
  } catch (const UsageError& e) {
    std::cerr << "op3m: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "op3m: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
