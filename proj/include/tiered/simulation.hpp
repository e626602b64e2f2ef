#pragma once

// Informativeness experiment: random DAGs, their CPDAGs, and the tiered
// MPDAGs under five coarsenings of a 5-tier ordering.

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "tiered/graph.hpp"
#include "tiered/independence.hpp"
#include "tiered/orientation.hpp"
#include "tiered/ordering.hpp"
#include "tiered/rng.hpp"

namespace tiered {

inline constexpr int kBaseTiers = 5;

enum class Density { kSparse, kDense };
enum class Generator { kErdosRenyi, kPowerLaw, kGeometric };

inline double expected_neighbours(Density d) { return d == Density::kSparse ? 2.0 : 5.0; }

inline std::string to_string(Density d) { return d == Density::kSparse ? "sparse" : "dense"; }

inline std::string to_string(Generator g) {
  switch (g) {
    case Generator::kErdosRenyi: return "er";
    case Generator::kPowerLaw: return "power-law";
    case Generator::kGeometric: return "geometric";
  }
  return "?";
}

inline Density parse_density(const std::string& s) {
  if (s == "sparse") return Density::kSparse;
  if (s == "dense") return Density::kDense;
  throw std::invalid_argument("unknown density '" + s + "' (expected sparse or dense)");
}

inline Generator parse_generator(const std::string& s) {
  if (s == "er" || s == "erdos-renyi") return Generator::kErdosRenyi;
  if (s == "power-law" || s == "pl") return Generator::kPowerLaw;
  if (s == "geometric" || s == "geo") return Generator::kGeometric;
  throw std::invalid_argument("unknown generator '" + s + "' (expected er, power-law or geometric)");
}

/// Coarsening of the 5 base tiers: mapping[i] is the scheme tier of base tier i+1.
struct TierScheme {
  std::string name;
  std::array<int, kBaseTiers> mapping{};

  static TierScheme full() { return {"full", {1, 2, 3, 4, 5}}; }
  static TierScheme early1() { return {"early1", {1, 2, 2, 2, 2}}; }
  static TierScheme early2() { return {"early2", {1, 2, 3, 3, 3}}; }
  static TierScheme late1() { return {"late1", {1, 1, 1, 1, 2}}; }
  static TierScheme late2() { return {"late2", {1, 1, 1, 2, 3}}; }
  static TierScheme single() { return {"single", {1, 1, 1, 1, 1}}; }

  static std::vector<TierScheme> standard() { return {full(), early1(), early2(), late1(), late2()}; }

  friend bool operator==(const TierScheme&, const TierScheme&) = default;
};

/// Base tier (1..5) of each topological position: contiguous blocks, the
/// first p % 5 blocks one node larger.
inline std::vector<int> base_tiers(std::size_t p) {
  std::vector<int> out;
  out.reserve(p);
  for (int t = 0; t < kBaseTiers; ++t) {
    const std::size_t block = p / kBaseTiers + (static_cast<std::size_t>(t) < p % kBaseTiers ? 1 : 0);
    out.insert(out.end(), block, t + 1);
  }
  return out;
}

inline TieredOrdering scheme_ordering(std::size_t p, const TierScheme& scheme) {
  std::vector<int> tiers = base_tiers(p);
  for (int& t : tiers) t = scheme.mapping[static_cast<std::size_t>(t - 1)];
  return TieredOrdering(tiers);
}

namespace detail {

// Probability that two uniform points in the unit square are within r (r <= 1).
inline double unit_square_within(double r) {
  return std::numbers::pi * r * r - 8.0 / 3.0 * r * r * r + 0.5 * r * r * r * r;
}

inline double geometric_radius(double prob) {
  if (prob >= unit_square_within(1.0)) return std::numbers::sqrt2;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (unit_square_within(mid) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

inline EdgeList erdos_renyi(std::size_t p, double d, Rng& rng) {
  const double prob = d / static_cast<double>(p - 1);
  EdgeList out;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      if (rng.bernoulli(prob)) out.emplace_back(i, j);
    }
  }
  return out;
}

// Preferential attachment: node t joins with k_t edges to earlier nodes,
// chosen with probability proportional to degree + 1. The k_t are spread so
// the total is round(p * d / 2).
inline EdgeList preferential_attachment(std::size_t p, double d, Rng& rng) {
  const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(p) * d / 2.0));
  std::vector<std::size_t> degree(p, 0);
  EdgeList out;
  for (std::size_t t = 1; t < p; ++t) {
    const auto want = static_cast<std::size_t>(
        std::llround(static_cast<double>(target) * static_cast<double>(t) / static_cast<double>(p - 1)));
    const std::size_t k = std::min(t, want > out.size() ? want - out.size() : 0);
    std::vector<char> taken(t, 0);
    for (std::size_t e = 0; e < k; ++e) {
      double total = 0;
      for (std::size_t v = 0; v < t; ++v) {
        if (!taken[v]) total += static_cast<double>(degree[v] + 1);
      }
      double u = rng.uniform() * total;
      std::size_t pick = t;
      for (std::size_t v = 0; v < t; ++v) {
        if (taken[v]) continue;
        pick = v;
        u -= static_cast<double>(degree[v] + 1);
        if (u < 0) break;
      }
      taken[pick] = 1;
    }
    for (std::size_t v = 0; v < t; ++v) {
      if (!taken[v]) continue;
      out.emplace_back(v, t);
      ++degree[v];
      ++degree[t];
    }
  }
  return out;
}

inline EdgeList random_geometric(std::size_t p, double d, Rng& rng) {
  const double r = geometric_radius(d / static_cast<double>(p - 1));
  std::vector<std::pair<double, double>> pts(p);
  for (auto& [x, y] : pts) {
    x = rng.uniform();
    y = rng.uniform();
  }
  EdgeList out;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const double dx = pts[i].first - pts[j].first;
      const double dy = pts[i].second - pts[j].second;
      if (dx * dx + dy * dy < r * r) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace detail

/// Random DAG with nodes V1..Vp numbered by topological position: skeleton
/// from the chosen model, then directed along a uniformly random order.
inline Pdag random_dag(std::size_t p, double expected, Generator gen, Rng& rng) {
  if (p < 2) throw std::invalid_argument("random_dag needs at least 2 nodes");
  if (!(expected > 0) || expected >= static_cast<double>(p)) {
    throw std::invalid_argument("random_dag: expected neighbours must lie in (0, p)");
  }
  detail::EdgeList skel;
  switch (gen) {
    case Generator::kErdosRenyi: skel = detail::erdos_renyi(p, expected, rng); break;
    case Generator::kPowerLaw: skel = detail::preferential_attachment(p, expected, rng); break;
    case Generator::kGeometric: skel = detail::random_geometric(p, expected, rng); break;
  }
  std::vector<std::size_t> position(p);
  for (std::size_t i = 0; i < p; ++i) position[i] = i;
  rng.shuffle(position);
  Pdag dag = Pdag::with_size(p);
  for (const auto& [u, v] : skel) {
    dag.add_directed(std::min(position[u], position[v]), std::max(position[u], position[v]));
  }
  return dag;
}

struct SimCell {
  std::size_t nodes = 0;
  Density density = Density::kSparse;
  Generator generator = Generator::kErdosRenyi;

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(nodes) << 8) | (static_cast<std::uint64_t>(density) << 4) |
           static_cast<std::uint64_t>(generator);
  }
};

struct SimConfig {
  std::vector<std::size_t> nodes{10, 25, 50, 100};
  std::vector<Density> densities{Density::kSparse, Density::kDense};
  std::vector<Generator> generators{Generator::kErdosRenyi, Generator::kPowerLaw, Generator::kGeometric};
  std::size_t replications = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    if (replications < 1) throw std::invalid_argument("replications must be at least 1");
    if (nodes.empty() || densities.empty() || generators.empty()) {
      throw std::invalid_argument("simulation config has an empty dimension");
    }
    for (std::size_t p : nodes) {
      for (Density d : densities) {
        if (p < 2 || expected_neighbours(d) >= static_cast<double>(p)) {
          throw std::invalid_argument(std::to_string(p) + " nodes is too few for " + to_string(d) +
                                      " graphs");
        }
      }
    }
  }

  /// Cells in nodes, density, generator order.
  std::vector<SimCell> cells() const {
    std::vector<SimCell> out;
    for (std::size_t p : nodes) {
      for (Density d : densities) {
        for (Generator g : generators) out.push_back({p, d, g});
      }
    }
    return out;
  }
};

struct SimRecord {
  std::size_t nodes = 0;
  Density density = Density::kSparse;
  Generator generator = Generator::kErdosRenyi;
  std::string scheme;
  std::size_t rep = 0;
  std::size_t n_edges = 0;
  std::size_t n_dir_cpdag = 0;
  std::size_t n_dir_mpdag = 0;
  double gain_frac = 0.0;

  friend bool operator==(const SimRecord&, const SimRecord&) = default;
};

/// One DAG, all schemes. The DAG depends only on (seed, cell, rep).
inline std::vector<SimRecord> run_replication(const SimCell& cell, const std::vector<TierScheme>& schemes,
                                              std::size_t rep, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, cell.key(), rep);
  const Pdag dag = random_dag(cell.nodes, expected_neighbours(cell.density), cell.generator, rng);
  const Pdag cpdag = cpdag_of(dag);
  std::vector<SimRecord> out;
  for (const TierScheme& scheme : schemes) {
    const Mpdag m = tiered_mpdag(cpdag, scheme_ordering(cell.nodes, scheme));
    SimRecord r{cell.nodes, cell.density, cell.generator, scheme.name, rep,
                dag.num_edges(), cpdag.num_directed(), m.graph.num_directed(), 0.0};
    if (r.n_edges > 0) {
      r.gain_frac = static_cast<double>(r.n_dir_mpdag - r.n_dir_cpdag) / static_cast<double>(r.n_edges);
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Runs every (cell, replication) pair on a thread pool. Output order is
/// cell, then replication, then scheme, whatever the thread count.
inline std::vector<SimRecord> run_simulation(const SimConfig& config,
                                             const std::vector<TierScheme>& schemes = TierScheme::standard(),
                                             unsigned threads = 0) {
  config.validate();
  const std::vector<SimCell> cells = config.cells();
  const std::size_t jobs = cells.size() * config.replications;
  std::vector<std::vector<SimRecord>> slots(jobs);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
      try {
        slots[j] = run_replication(cells[j / config.replications], schemes, j % config.replications, config.seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<SimRecord> out;
  out.reserve(jobs * schemes.size());
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  return out;
}

inline std::vector<SimRecord> run_cell(const SimCell& cell, const std::vector<TierScheme>& schemes,
                                       std::size_t replications, std::uint64_t seed, unsigned threads = 0) {
  SimConfig config{{cell.nodes}, {cell.density}, {cell.generator}, replications, seed};
  return run_simulation(config, schemes, threads);
}

// ---------------------------------------------------------------- output

inline constexpr const char* kCsvHeader =
    "nodes,density,generator,scheme,rep,n_edges,n_dir_cpdag,n_dir_mpdag,gain_frac";

/// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void write_csv(const std::vector<SimRecord>& records, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const SimRecord& r : records) {
    os << r.nodes << ',' << to_string(r.density) << ',' << to_string(r.generator) << ',' << r.scheme << ','
       << r.rep << ',' << r.n_edges << ',' << r.n_dir_cpdag << ',' << r.n_dir_mpdag << ','
       << format_double(r.gain_frac) << '\n';
  }
}

inline std::vector<SimRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
  std::vector<SimRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 9) throw std::runtime_error("CSV line " + std::to_string(lineno) + ": expected 9 fields");
    auto num = [&](const std::string& s, auto& dst) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), dst);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("CSV line " + std::to_string(lineno) + ": bad number '" + s + "'");
      }
    };
    SimRecord r;
    num(f[0], r.nodes);
    r.density = parse_density(f[1]);
    r.generator = parse_generator(f[2]);
    r.scheme = f[3];
    num(f[4], r.rep);
    num(f[5], r.n_edges);
    num(f[6], r.n_dir_cpdag);
    num(f[7], r.n_dir_mpdag);
    num(f[8], r.gain_frac);
    out.push_back(std::move(r));
  }
  return out;
}

/// Sample quantile, linear interpolation between order statistics
/// (Hyndman-Fan type 7). `sorted` must be sorted and non-empty.
inline double quantile(const std::vector<double>& sorted, double prob) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct SummaryRow {
  std::size_t nodes = 0;
  std::string density;
  std::string generator;  // "pooled" when generators are merged
  std::string scheme;
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
  double lower_whisker = 0, upper_whisker = 0;  // 1.5 IQR rule
};

/// gain_frac distribution per (nodes, density, generator, scheme), in order
/// of first appearance.
inline std::vector<SummaryRow> summarize(const std::vector<SimRecord>& records, bool pool_generators = false) {
  using Key = std::tuple<std::size_t, std::string, std::string, std::string>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const SimRecord& r : records) {
    Key k{r.nodes, to_string(r.density), pool_generators ? "pooled" : to_string(r.generator), r.scheme};
    auto [it, fresh] = groups.try_emplace(k);
    if (fresh) order.push_back(k);
    it->second.push_back(r.gain_frac);
  }
  std::vector<SummaryRow> out;
  for (const Key& k : order) {
    std::vector<double> v = groups[k];
    std::sort(v.begin(), v.end());
    SummaryRow row{std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), v.size()};
    row.min = v.front();
    row.max = v.back();
    row.q1 = quantile(v, 0.25);
    row.median = quantile(v, 0.5);
    row.q3 = quantile(v, 0.75);
    double sum = 0;
    for (double x : v) sum += x;
    row.mean = sum / static_cast<double>(v.size());
    const double iqr = row.q3 - row.q1;
    row.lower_whisker = *std::lower_bound(v.begin(), v.end(), row.q1 - 1.5 * iqr);
    row.upper_whisker = *(std::upper_bound(v.begin(), v.end(), row.q3 + 1.5 * iqr) - 1);
    out.push_back(std::move(row));
  }
  return out;
}

inline void write_summary(const std::vector<SummaryRow>& rows, std::ostream& os) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%5s %-7s %-10s %-7s %6s %8s %8s %8s %8s %8s\n", "nodes", "density",
                "generator", "scheme", "n", "min", "q1", "median", "q3", "max");
  os << buf;
  for (const SummaryRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%5zu %-7s %-10s %-7s %6zu %8.4f %8.4f %8.4f %8.4f %8.4f\n", r.nodes,
                  r.density.c_str(), r.generator.c_str(), r.scheme.c_str(), r.count, r.min, r.q1, r.median,
                  r.q3, r.max);
    os << buf;
  }
}

/// One row per box: five-number summary plus whisker ends.
inline void write_boxplot_data(const std::vector<SummaryRow>& rows, std::ostream& os) {
  os << "nodes,density,generator,scheme,count,min,lower_whisker,q1,median,q3,upper_whisker,max,mean\n";
  for (const SummaryRow& r : rows) {
    os << r.nodes << ',' << r.density << ',' << r.generator << ',' << r.scheme << ',' << r.count << ','
       << format_double(r.min) << ',' << format_double(r.lower_whisker) << ',' << format_double(r.q1) << ','
       << format_double(r.median) << ',' << format_double(r.q3) << ',' << format_double(r.upper_whisker)
       << ',' << format_double(r.max) << ',' << format_double(r.mean) << '\n';
  }
}

struct OutputPaths {
  std::string csv;
  std::string summary;  // empty: skip
  std::string boxplot;  // empty: skip
};

/// Writes the record CSV plus optional summary and boxplot files.
inline std::vector<SummaryRow> emit_results(const std::vector<SimRecord>& records, const OutputPaths& paths) {
  if (records.empty()) throw std::invalid_argument("no simulation records to write");
  auto write = [](const std::string& path, auto&& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    body(os);
    os.flush();
    if (!os) throw std::runtime_error("write to " + path + " failed");
  };
  const std::vector<SummaryRow> rows = summarize(records);
  write(paths.csv, [&](std::ostream& os) { write_csv(records, os); });
  if (!paths.summary.empty()) write(paths.summary, [&](std::ostream& os) { write_summary(rows, os); });
  if (!paths.boxplot.empty()) write(paths.boxplot, [&](std::ostream& os) { write_boxplot_data(rows, os); });
  return rows;
}

}  // namespace tiered
