#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tiered;

namespace {

const char* kDag =
    "nodes: A B C D E F G\n"
    "A -> B\nA -> C\nB -> E\nC -> D\nD -> E\nC -> F\nF -> G\n";

const char* kCpdag =
    "nodes: A B C D E F G\n"
    "A -- B\nA -- C\nB -> E\nC -- D\nC -- F\nD -> E\nF -- G\n";

Pdag random_pdag(std::size_t p, Rng& rng) {
  Pdag g = oracle::random_dag(p, 0.3, rng);
  for (const Edge& e : g.edges()) {
    if (rng.bernoulli(0.5)) {
      g.remove_edge(e.from, e.to);
      g.add_undirected(e.from, e.to);
    }
  }
  return g;
}

}  // namespace

TEST(Pdag, RejectsDuplicateAndEmptyNames) {
  EXPECT_THROW(Pdag({"A", "A"}), GraphError);
  EXPECT_THROW(Pdag({"A", ""}), GraphError);
}

TEST(Pdag, MarksAreSymmetric) {
  Pdag g({"A", "B", "C"});
  g.add_directed(0, 1);
  g.add_undirected(1, 2);
  EXPECT_TRUE(g.directed(0, 1));
  EXPECT_FALSE(g.directed(1, 0));
  EXPECT_TRUE(g.undirected(2, 1));
  EXPECT_EQ(g.parents(1), NodeSet{0});
  EXPECT_EQ(g.neighbours(1), NodeSet{2});
  EXPECT_EQ(g.adjacents(1), (NodeSet{0, 2}));
  EXPECT_EQ(g.num_directed(), 1u);
  EXPECT_EQ(g.num_undirected(), 1u);
}

TEST(Pdag, SelfLoopRejected) {
  Pdag g({"A", "B"});
  EXPECT_THROW(g.add_undirected(0, 0), GraphError);
}

TEST(Skeleton, RunningExampleHasSevenUndirectedEdges) {
  const Pdag d = parse_graph(kDag);
  const Pdag s = skeleton(d);
  EXPECT_EQ(s.num_edges(), 7u);
  EXPECT_EQ(s.num_directed(), 0u);
}

TEST(Skeleton, UndirectedGraphIsFixed) {
  const Pdag c = skeleton(parse_graph(kCpdag));
  EXPECT_EQ(skeleton(c), c);
}

TEST(Skeleton, PreservesEdgeCountOnRandomGraphs) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Pdag g = random_pdag(10, rng);
    const Pdag s = skeleton(g);
    EXPECT_EQ(s.num_edges(), g.num_edges());
    EXPECT_EQ(s.num_directed(), 0u);
  }
}

TEST(Subgraphs, UndirectedPartOfCpdag) {
  const Pdag cu = undirected_subgraph(parse_graph(kCpdag));
  EXPECT_EQ(write_graph(cu), "nodes: A B C D E F G\nA -- B\nA -- C\nC -- D\nC -- F\nF -- G\n");
}

TEST(Subgraphs, DagHasNoUndirectedPart) {
  EXPECT_EQ(undirected_subgraph(parse_graph(kDag)).num_edges(), 0u);
}

TEST(Subgraphs, DirectedAndUndirectedPartsPartitionEdges) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Pdag g = random_pdag(9, rng);
    const Pdag u = undirected_subgraph(g);
    const Pdag d = directed_subgraph(g);
    EXPECT_EQ(u.num_edges() + d.num_edges(), g.num_edges());
    EXPECT_EQ(u.num_directed(), 0u);
    EXPECT_EQ(d.num_undirected(), 0u);
    Pdag merged = d;
    for (const Edge& e : u.edges()) {
      EXPECT_FALSE(d.adjacent(e.from, e.to));
      merged.add_undirected(e.from, e.to);
    }
    EXPECT_EQ(merged, g);
    EXPECT_EQ(skeleton(merged), skeleton(g));
  }
}

TEST(InducedSubgraph, RestrictsToChain) {
  const Pdag d = parse_graph(kDag);
  const NodeId keep[] = {d.index("C"), d.index("D"), d.index("E")};
  EXPECT_EQ(write_graph(induced_subgraph(d, keep)), "nodes: C D E\nC -> D\nD -> E\n");
}

TEST(InducedSubgraph, AllNodesIsIdentityAndEmptyIsEmpty) {
  const Pdag d = parse_graph(kDag);
  std::vector<NodeId> all(d.size());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(induced_subgraph(d, all), d);
  EXPECT_EQ(induced_subgraph(d, std::vector<NodeId>{}).size(), 0u);
}

TEST(InducedSubgraph, UnknownNodeThrows) {
  const Pdag d = parse_graph(kDag);
  EXPECT_THROW(induced_subgraph(d, std::vector<NodeId>{0, 99}), GraphError);
}

TEST(Cycles, PartiallyDirectedTriangle) {
  Pdag g({"A", "B", "C"});
  g.add_directed(0, 1);
  g.add_undirected(1, 2);
  g.add_directed(2, 0);
  EXPECT_TRUE(has_partially_directed_cycle(g));
  EXPECT_FALSE(has_directed_cycle(g));
}

TEST(Cycles, UndirectedCycleIsNotPartiallyDirected) {
  Pdag g({"A", "B", "C"});
  g.add_undirected(0, 1);
  g.add_undirected(1, 2);
  g.add_undirected(0, 2);
  EXPECT_FALSE(has_partially_directed_cycle(g));
}

TEST(Cycles, BackwardTraversalDoesNotCount) {
  Pdag g({"A", "B", "C"});
  g.add_directed(0, 1);
  g.add_directed(0, 2);
  g.add_undirected(1, 2);
  EXPECT_FALSE(has_partially_directed_cycle(g));
}

TEST(Cycles, DagsHaveNoCycles) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Pdag d = oracle::random_dag(8, 0.4, rng);
    EXPECT_FALSE(has_directed_cycle(d));
    EXPECT_FALSE(has_partially_directed_cycle(d));
  }
  Pdag cyc = Pdag::with_size(3);
  cyc.add_directed(0, 1);
  cyc.add_directed(1, 2);
  cyc.add_directed(2, 0);
  EXPECT_TRUE(has_directed_cycle(cyc));
  EXPECT_EQ(has_directed_cycle(cyc), oracle::has_cycle_dfs(cyc));
}

TEST(ChainComponents, RunningExampleMpdag) {
  const Pdag g = parse_graph("nodes: A B C D E F G\nA -- B\nA -> C\nB -> E\nC -> D\nC -> F\nD -> E\nF -> G\n");
  const auto comps = chain_components(g);
  ASSERT_EQ(comps.size(), 6u);
  EXPECT_EQ(comps[0], (NodeSet{0, 1}));
  for (std::size_t i = 1; i < comps.size(); ++i) EXPECT_EQ(comps[i].size(), 1u);
}

TEST(ChainComponents, ConnectedUndirectedGraphIsOneComponent) {
  EXPECT_EQ(chain_components(undirected_subgraph(skeleton(parse_graph(kDag)))).size(), 1u);
}

TEST(ChainComponents, MatchesUnionFind) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const Pdag g = random_pdag(12, rng);
    auto comps = chain_components(g);
    std::sort(comps.begin(), comps.end());
    EXPECT_EQ(comps, oracle::components(g));
    std::size_t covered = 0;
    for (const NodeSet& c : comps) {
      covered += c.size();
      std::size_t inside = 0;
      for (NodeId a : c) {
        for (NodeId b : c) inside += (a < b && g.undirected(a, b)) ? 1 : 0;
      }
      EXPECT_EQ(inside, undirected_subgraph(induced_subgraph(g, c)).num_edges());
    }
    EXPECT_EQ(covered, g.size());
  }
}

TEST(Chordality, FourCycleIsNotChordal) {
  Pdag g = Pdag::with_size(4);
  g.add_undirected(0, 1);
  g.add_undirected(1, 2);
  g.add_undirected(2, 3);
  g.add_undirected(3, 0);
  EXPECT_FALSE(is_chordal(g));
  g.add_undirected(0, 2);
  EXPECT_TRUE(is_chordal(g));
}

TEST(Chordality, TreesAreChordal) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Pdag t = Pdag::with_size(10);
    for (NodeId v = 1; v < 10; ++v) t.add_undirected(rng.below(v), v);
    EXPECT_TRUE(is_chordal(t));
  }
}

TEST(Chordality, DirectedEdgeThrows) {
  Pdag g = Pdag::with_size(2);
  g.add_directed(0, 1);
  EXPECT_THROW(is_chordal(g), GraphError);
}

TEST(Chordality, AgreesWithChordlessCycleSearchOnAllSmallGraphs) {
  for (std::size_t p = 1; p <= 6; ++p) {
    for (const Pdag& g : oracle::all_undirected(p)) {
      ASSERT_EQ(is_chordal(g), oracle::chordal(g)) << write_graph(g);
    }
  }
  Rng rng(6);
  for (int i = 0; i < 2000; ++i) {
    Pdag g = Pdag::with_size(7);
    for (NodeId a = 0; a < 7; ++a) {
      for (NodeId b = a + 1; b < 7; ++b) {
        if (rng.bernoulli(0.45)) g.add_undirected(a, b);
      }
    }
    ASSERT_EQ(is_chordal(g), oracle::chordal(g)) << write_graph(g);
  }
}

TEST(UnshieldedPaths, BToDInUndirectedPart) {
  const Pdag cu = undirected_subgraph(parse_graph(kCpdag));
  const auto paths = find_unshielded_paths(cu, cu.index("B"), cu.index("D"));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(format_path(cu, paths[0]), "B -- A -- C -- D");
}

TEST(UnshieldedPaths, SingleEdge) {
  Pdag g = Pdag::with_size(2);
  g.add_undirected(0, 1);
  const auto paths = find_unshielded_paths(g, 0, 1);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], (Path{0, 1}));
}

TEST(UnshieldedPaths, CompleteGraphOnlyDirectEdge) {
  Pdag g = Pdag::with_size(5);
  for (NodeId a = 0; a < 5; ++a) {
    for (NodeId b = a + 1; b < 5; ++b) g.add_undirected(a, b);
  }
  const auto paths = find_unshielded_paths(g, 0, 4);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], (Path{0, 4}));
}

TEST(UnshieldedPaths, DistinctAndUnshieldedOnRandomGraphs) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Pdag g = random_pdag(9, rng);
    for (NodeId a = 0; a < g.size(); ++a) {
      for (NodeId b = 0; b < g.size(); ++b) {
        if (a == b) continue;
        const auto paths = find_unshielded_paths(g, a, b);
        std::set<Path> unique(paths.begin(), paths.end());
        EXPECT_EQ(unique.size(), paths.size());
        for (const Path& p : paths) {
          EXPECT_EQ(p.front(), a);
          EXPECT_EQ(p.back(), b);
          std::set<NodeId> nodes(p.begin(), p.end());
          EXPECT_EQ(nodes.size(), p.size());
          for (std::size_t k = 0; k + 1 < p.size(); ++k) EXPECT_TRUE(g.adjacent(p[k], p[k + 1]));
          for (std::size_t k = 0; k + 2 < p.size(); ++k) EXPECT_FALSE(g.adjacent(p[k], p[k + 2]));
        }
      }
    }
  }
}

TEST(UnshieldedPaths, GuardRejectsLargeGraphs) {
  const Pdag g = Pdag::with_size(30);
  EXPECT_THROW(find_unshielded_paths(g, 0, 1), GraphError);
  EXPECT_NO_THROW(find_unshielded_paths(g, 0, 1, 30));
}
