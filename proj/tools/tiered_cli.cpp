#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "tiered/tiered.hpp"

using namespace tiered;
using nlohmann::ordered_json;

namespace {

// Bad option values that only show up after the input graph is known.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      const std::string tok = detail::strip(cur);
      if (!tok.empty()) out.push_back(tok);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

NodeId lookup(const Pdag& g, const std::string& name) {
  if (!g.contains(name)) throw UsageError("unknown node '" + name + "'");
  return g.index(name);
}

NodeSet node_set(const Pdag& g, const std::vector<std::string>& names) {
  NodeSet out;
  for (const auto& item : names) {
    for (const auto& n : split_list(item)) out.push_back(lookup(g, n));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string format_set(const Pdag& g, const NodeSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + g.name(s[i]);
  return out + "}";
}

std::string format_edges(const Pdag& g, const std::vector<Edge>& edges) {
  if (edges.empty()) return "none";
  std::string out;
  for (const Edge& e : edges) out += (out.empty() ? "" : ", ") + format_edge(g, e);
  return out;
}

ordered_json names_json(const Pdag& g, const NodeSet& s) {
  ordered_json a = ordered_json::array();
  for (NodeId v : s) a.push_back(g.name(v));
  return a;
}

ordered_json edge_json(const Pdag& g, const Edge& e) {
  return {{"from", g.name(e.from)}, {"to", g.name(e.to)}, {"directed", e.directed}};
}

ordered_json edges_json(const Pdag& g, const std::vector<Edge>& edges) {
  ordered_json a = ordered_json::array();
  for (const Edge& e : edges) a.push_back(edge_json(g, e));
  return a;
}

ordered_json graph_json(const Pdag& g) {
  return {{"nodes", g.names()}, {"edges", edges_json(g, g.edges())}};
}

ordered_json path_json(const Pdag& g, const Path& p) { return names_json(g, NodeSet(p.begin(), p.end())); }

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
  bool json = false;
};

// validate ---------------------------------------------------------------

struct ValidateArgs : Common {
  std::string graph;
  bool cpdag = false;
};

int run_validate(const ValidateArgs& a) {
  const Pdag g = read_graph_file(a.graph);
  if (a.cpdag) {
    if (!g.is_dag()) throw GraphError("--cpdag needs a DAG");
    const Pdag c = cpdag_of(g);
    if (a.json) print_json(graph_json(c));
    else std::cout << write_graph(c);
    return 0;
  }
  const bool pd_cycle = has_partially_directed_cycle(g);
  const auto comps = chain_components(g);
  bool chordal = true;
  for (const NodeSet& c : comps) chordal = chordal && is_chordal(induced_subgraph(undirected_subgraph(g), c));
  const bool closed = meek_closure(g, RuleSet::all()) == g;
  const auto vs = v_structures(g);
  if (a.json) {
    ordered_json v = ordered_json::array();
    for (const auto& s : vs) v.push_back({g.name(s.parent1), g.name(s.collider), g.name(s.parent2)});
    print_json({{"nodes", g.size()},
                {"edges", g.num_edges()},
                {"directed", g.num_directed()},
                {"undirected", g.num_undirected()},
                {"dag", g.is_dag()},
                {"partially_directed_cycle", pd_cycle},
                {"chain_components", comps.size()},
                {"chordal_components", chordal},
                {"meek_closed", closed},
                {"v_structures", v}});
    return 0;
  }
  std::cout << "nodes: " << g.size() << '\n'
            << "edges: " << g.num_edges() << " (" << g.num_directed() << " directed, " << g.num_undirected()
            << " undirected)\n"
            << "dag: " << yes_no(g.is_dag()) << '\n'
            << "partially-directed-cycle: " << yes_no(pd_cycle) << '\n'
            << "chain-components: " << comps.size() << '\n'
            << "chordal-components: " << yes_no(chordal) << '\n'
            << "meek-closed: " << yes_no(closed) << '\n'
            << "v-structures:";
  if (vs.empty()) std::cout << " none";
  for (const auto& s : vs) {
    std::cout << ' ' << g.name(s.parent1) << "->" << g.name(s.collider) << "<-" << g.name(s.parent2);
  }
  std::cout << '\n';
  return 0;
}

// orient -----------------------------------------------------------------

struct OrientArgs : Common {
  std::string cpdag, tiers, rules = "1", out;
  bool trace = false;
};

int run_orient(const OrientArgs& a) {
  const Pdag c = read_graph_file(a.cpdag);
  const TieredOrdering tau = read_tiers_file(a.tiers, c);
  const RuleSet rules = a.rules == "all" ? RuleSet::all() : RuleSet{1};
  std::vector<FiredEdge> fired;
  const Pdag g = tiered_mpdag(c, tau, &fired, rules).graph;
  if (a.trace && !a.json) {
    for (const FiredEdge& f : fired) std::cerr << "rule" << f.rule << ": " << g.name(f.from) << "->" << g.name(f.to) << '\n';
  }
  std::string text;
  if (a.json) {
    ordered_json j = graph_json(g);
    if (a.trace) {
      ordered_json t = ordered_json::array();
      for (const FiredEdge& f : fired) t.push_back({{"rule", f.rule}, {"from", g.name(f.from)}, {"to", g.name(f.to)}});
      j["trace"] = t;
    }
    text = j.dump(2) + "\n";
  } else {
    text = write_graph(g);
  }
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(a.out, std::ios::binary);
    if (!(os << text)) throw FileError("cannot write '" + a.out + "'");
  }
  return 0;
}

// compare-tiers ----------------------------------------------------------

struct CompareArgs : Common {
  std::string cpdag, tiers1, tiers2;
  bool paths = false;
};

void print_report(const Pdag& c, const std::string& label, const CrossTierEdgeReport& r) {
  std::cout << label << " earliest paths:\n";
  if (r.earliest_paths.empty()) std::cout << "  none\n";
  for (const EarliestPath& ep : r.earliest_paths) {
    std::cout << "  " << format_path(r.oriented, ep.path) << " : " << format_edges(c, ep.first_cross_tier) << '\n';
  }
  std::cout << label << " fully shielded cross-tier: " << format_edges(c, r.fully_shielded_cross_tier) << '\n';
}

ordered_json report_json(const Pdag& c, const CrossTierEdgeReport& r) {
  ordered_json paths = ordered_json::array();
  for (const EarliestPath& ep : r.earliest_paths) {
    paths.push_back({{"path", path_json(c, ep.path)}, {"first_cross_tier", edges_json(c, ep.first_cross_tier)}});
  }
  return {{"earliest_paths", paths}, {"fully_shielded_cross_tier", edges_json(c, r.fully_shielded_cross_tier)}};
}

int run_compare(const CompareArgs& a) {
  const Pdag c = read_graph_file(a.cpdag);
  const TieredOrdering t1 = read_tiers_file(a.tiers1, c);
  const TieredOrdering t2 = read_tiers_file(a.tiers2, c);
  const TierComparison ref = compare_refinement(t1, t2);
  const EquivalenceResult eq = tiers_equivalent(c, t1, t2);
  const InformativenessResult inf = tiers_more_informative(c, t1, t2);
  const Pdag cu = undirected_subgraph(c);

  if (a.json) {
    ordered_json j{{"refinement", to_string(ref.verdict)},
                   {"equivalent", eq.equivalent},
                   {"first_cross_tier_edges_agree", eq.first_edges_agree},
                   {"fully_shielded_edges_agree", eq.shielded_edges_agree},
                   {"witness", eq.witness ? edge_json(c, *eq.witness) : ordered_json(nullptr)},
                   {"witness_path", eq.witness_path ? path_json(c, *eq.witness_path) : ordered_json(nullptr)},
                   {"informativeness", to_string(inf.verdict)},
                   {"only_first", edges_json(c, inf.only_first)},
                   {"only_second", edges_json(c, inf.only_second)},
                   {"sufficient_conditions",
                    {{"first_edges_cross_under_first", inf.cond_i},
                     {"shielded_edges_cross_under_first", inf.cond_ii},
                     {"extra_first_edge", inf.cond_iii},
                     {"extra_shielded_edge", inf.cond_iv},
                     {"hold", inf.sufficient_conditions_hold()}}}};
    if (a.paths) {
      j["first_report"] = report_json(c, cross_tier_report(c, t1));
      j["second_report"] = report_json(c, cross_tier_report(c, t2));
    }
    print_json(j);
    return 0;
  }
  std::cout << "refinement: " << to_string(ref.verdict) << '\n'
            << "equivalent: " << yes_no(eq.equivalent) << '\n'
            << "first-cross-tier-edges-agree: " << yes_no(eq.first_edges_agree) << '\n'
            << "fully-shielded-edges-agree: " << yes_no(eq.shielded_edges_agree) << '\n';
  if (eq.witness) std::cout << "witness: " << format_edge(c, *eq.witness) << '\n';
  if (eq.witness_path) std::cout << "witness-path: " << format_path(cu, *eq.witness_path) << '\n';
  std::cout << "informativeness: " << to_string(inf.verdict) << '\n'
            << "only-first: " << format_edges(c, inf.only_first) << '\n'
            << "only-second: " << format_edges(c, inf.only_second) << '\n'
            << "sufficient-conditions: " << yes_no(inf.sufficient_conditions_hold()) << '\n';
  if (a.paths) {
    print_report(c, "first", cross_tier_report(c, t1));
    print_report(c, "second", cross_tier_report(c, t2));
  }
  return 0;
}

// dsep -------------------------------------------------------------------

struct DsepArgs : Common {
  std::string graph;
  std::vector<std::string> a, b, c;
};

int run_dsep(const DsepArgs& a) {
  const Pdag g = read_graph_file(a.graph);
  if (!g.is_dag()) throw GraphError("dsep needs a DAG");
  const SeparationQuery q{node_set(g, a.a), node_set(g, a.b), node_set(g, a.c)};
  const bool sep = is_d_separated(g, q);
  if (a.json) {
    print_json({{"a", names_json(g, q.a)}, {"b", names_json(g, q.b)}, {"c", names_json(g, q.c)}, {"separated", sep}});
  } else {
    std::cout << (sep ? "separated" : "connected") << '\n';
  }
  return 0;
}

// classify-path ----------------------------------------------------------

struct ClassifyArgs : Common {
  std::string graph;
  std::vector<std::string> path;
};

int run_classify(const ClassifyArgs& a) {
  const Pdag g = read_graph_file(a.graph);
  Path p;
  for (const auto& item : a.path) {
    for (const auto& n : split_list(item)) p.push_back(lookup(g, n));
  }
  const PathClassification cls = classify_path(g, p);
  if (a.json) {
    print_json({{"path", path_json(g, p)},
                {"possibly_causal", cls.possibly_causal},
                {"b_possibly_causal", cls.b_possibly_causal}});
  } else {
    std::cout << "path: " << format_path(g, p) << '\n'
              << "possibly-causal: " << yes_no(cls.possibly_causal) << '\n'
              << "b-possibly-causal: " << yes_no(cls.b_possibly_causal) << '\n';
  }
  return 0;
}

// ida --------------------------------------------------------------------

struct IdaArgs : Common {
  std::string graph, x;
  std::vector<std::string> joint;
};

int run_ida(const IdaArgs& a) {
  const Pdag g = read_graph_file(a.graph);
  if (a.x.empty() == a.joint.empty()) throw UsageError("ida needs exactly one of --x or --joint");
  ordered_json rows = ordered_json::array();
  if (!a.x.empty()) {
    const NodeId x = lookup(g, a.x);
    const auto ms = local_ida(g, x);
    if (!a.json) std::cout << "parent sets of " << g.name(x) << ":\n";
    for (const auto& [set, count] : ms.entries()) {
      if (a.json) rows.push_back({{"parents", names_json(g, set)}, {"multiplicity", count}});
      else std::cout << "  " << format_set(g, set) << " x" << count << '\n';
    }
    if (a.json) print_json({{"mode", "local"}, {"x", g.name(x)}, {"parent_sets", rows}});
    return 0;
  }
  const NodeSet xs = node_set(g, a.joint);
  const auto ms = joint_ida(g, xs);
  if (!a.json) std::cout << "joint parent sets of " << format_set(g, xs) << ":\n";
  for (const auto& [sets, count] : ms.entries()) {
    if (a.json) {
      ordered_json entry = ordered_json::object();
      for (std::size_t i = 0; i < xs.size(); ++i) entry[g.name(xs[i])] = names_json(g, sets[i]);
      rows.push_back({{"parents", entry}, {"multiplicity", count}});
    } else {
      std::cout << " ";
      for (std::size_t i = 0; i < xs.size(); ++i) std::cout << ' ' << g.name(xs[i]) << '=' << format_set(g, sets[i]);
      std::cout << " x" << count << '\n';
    }
  }
  if (a.json) print_json({{"mode", "joint"}, {"x", names_json(g, xs)}, {"parent_sets", rows}});
  return 0;
}

// simulate ---------------------------------------------------------------

struct SimulateArgs : Common {
  std::vector<std::size_t> nodes{10, 25, 50, 100};
  std::vector<std::string> densities{"sparse", "dense"};
  std::vector<std::string> generators{"er", "power-law", "geometric"};
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string out, summary, boxplot;
  bool pooled = false;
};

int run_simulate(const SimulateArgs& a) {
  SimConfig cfg;
  cfg.nodes = a.nodes;
  cfg.densities.clear();
  cfg.generators.clear();
  for (const auto& d : a.densities) cfg.densities.push_back(parse_density(d));
  for (const auto& g : a.generators) cfg.generators.push_back(parse_generator(g));
  cfg.replications = a.reps;
  cfg.seed = a.seed;
  cfg.validate();
  const auto records = run_simulation(cfg, TierScheme::standard(), a.threads);
  emit_results(records, {a.out, a.summary, a.boxplot});
  const auto rows = summarize(records, a.pooled);
  if (a.json) {
    ordered_json j = ordered_json::array();
    for (const SummaryRow& r : rows) {
      j.push_back({{"nodes", r.nodes},
                   {"density", r.density},
                   {"generator", r.generator},
                   {"scheme", r.scheme},
                   {"count", r.count},
                   {"min", r.min},
                   {"q1", r.q1},
                   {"median", r.median},
                   {"q3", r.q3},
                   {"max", r.max},
                   {"mean", r.mean}});
    }
    print_json({{"records", records.size()}, {"csv", a.out}, {"summary", j}});
  } else {
    write_summary(rows, std::cout);
  }
  return 0;
}

const CLI::Validator kPositive(
    [](std::string& s) -> std::string {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.find_first_not_of('0') == std::string::npos) {
        return "must be a positive integer, got '" + s + "'";
      }
      return {};
    },
    "POSITIVE");

void diag(const std::string& msg) { std::cerr << "tiered: error: " << msg << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tiered background knowledge for CPDAGs and MPDAGs", "tiered"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tiered 0.1.0");
  std::function<int()> action;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Parse a graph and report its structural properties");
  validate->add_option("graph", va.graph, "Graph file")->required();
  validate->add_flag("--cpdag", va.cpdag, "Print the CPDAG of a DAG instead");
  validate->add_flag("--json", va.json, "JSON output");
  validate->callback([&] { action = [&] { return run_validate(va); }; });

  OrientArgs oa;
  auto* orient = app.add_subcommand("orient", "Build the tiered MPDAG of a CPDAG");
  orient->add_option("cpdag", oa.cpdag, "CPDAG file")->required();
  orient->add_option("--tiers", oa.tiers, "Tiers file")->required();
  orient->add_option("--rules", oa.rules, "Orientation rules: 1 or all")->check(CLI::IsMember({"1", "all"}));
  orient->add_option("-o,--out", oa.out, "Write the MPDAG here instead of stdout");
  orient->add_flag("--trace", oa.trace, "Report each fired rule on stderr");
  orient->add_flag("--json", oa.json, "JSON output");
  orient->callback([&] { action = [&] { return run_orient(oa); }; });

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare-tiers", "Compare two tiered orderings of a CPDAG");
  compare->add_option("cpdag", ca.cpdag, "CPDAG file")->required();
  compare->add_option("tiers1", ca.tiers1, "First tiers file")->required();
  compare->add_option("tiers2", ca.tiers2, "Second tiers file")->required();
  compare->add_flag("--paths", ca.paths, "Also list earliest paths and fully shielded cross-tier edges");
  compare->add_flag("--json", ca.json, "JSON output");
  compare->callback([&] { action = [&] { return run_compare(ca); }; });

  DsepArgs da;
  auto* dsep = app.add_subcommand("dsep", "Test d-separation in a DAG");
  dsep->add_option("graph", da.graph, "DAG file")->required();
  dsep->add_option("--a", da.a, "First node set (comma separated)")->required();
  dsep->add_option("--b", da.b, "Second node set (comma separated)")->required();
  dsep->add_option("--c", da.c, "Conditioning set (comma separated)");
  dsep->add_flag("--json", da.json, "JSON output");
  dsep->callback([&] { action = [&] { return run_dsep(da); }; });

  ClassifyArgs cla;
  auto* classify = app.add_subcommand("classify-path", "Classify a path as possibly causal");
  classify->add_option("graph", cla.graph, "Graph file")->required();
  classify->add_option("--path", cla.path, "Path nodes in order (comma separated)")->required();
  classify->add_flag("--json", cla.json, "JSON output");
  classify->callback([&] { action = [&] { return run_classify(cla); }; });

  IdaArgs ia;
  auto* ida = app.add_subcommand("ida", "Enumerate possible parent sets");
  ida->add_option("graph", ia.graph, "MPDAG file")->required();
  ida->add_option("--x", ia.x, "Single node (local)");
  ida->add_option("--joint", ia.joint, "Node set (joint, comma separated)");
  ida->add_flag("--json", ia.json, "JSON output");
  ida->callback([&] { action = [&] { return run_ida(ia); }; });

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Run the tiered informativeness simulation");
  simulate->add_option("--nodes", sa.nodes, "Node counts")->delimiter(',')->check(CLI::Range(2, 100000))->capture_default_str();
  simulate->add_option("--density", sa.densities, "sparse, dense")
      ->delimiter(',')
      ->check(CLI::IsMember({"sparse", "dense"}))
      ->capture_default_str();
  simulate->add_option("--generator", sa.generators, "er, power-law, geometric")
      ->delimiter(',')
      ->check(CLI::IsMember({"er", "erdos-renyi", "power-law", "pl", "geometric", "geo"}))
      ->capture_default_str();
  simulate->add_option("--reps", sa.reps, "Replications per cell")->check(kPositive)->capture_default_str();
  simulate->add_option("--seed", sa.seed, "Base seed")->capture_default_str();
  simulate->add_option("--threads", sa.threads, "Worker threads (0: hardware concurrency)");
  simulate->add_option("--out", sa.out, "Per-replication CSV")->required();
  simulate->add_option("--summary", sa.summary, "Summary table file");
  simulate->add_option("--boxplot", sa.boxplot, "Boxplot statistics CSV");
  simulate->add_flag("--pooled", sa.pooled, "Pool generators in the printed summary");
  simulate->add_flag("--json", sa.json, "JSON output");
  simulate->callback([&] { action = [&] { return run_simulate(sa); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const FileError& e) {
    diag(e.what());
    return 2;
  } catch (const UsageError& e) {
    diag(e.what());
    return 2;
  } catch (const std::exception& e) {
    diag(e.what());
    return 1;
  }
}
