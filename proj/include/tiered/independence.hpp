#pragma once

#include <algorithm>
#include <deque>
#include <tuple>
#include <vector>

#include "tiered/graph.hpp"
#include "tiered/meek.hpp"

namespace tiered {

/// Query "A is d-separated from B given C". The three sets must be pairwise
/// disjoint and A, B non-empty.
struct SeparationQuery {
  NodeSet a;
  NodeSet b;
  NodeSet c;
};

/// Unshielded collider parent1 -> collider <- parent2 with parent1 < parent2.
struct VStructure {
  NodeId parent1 = 0;
  NodeId collider = 0;
  NodeId parent2 = 0;

  friend bool operator==(const VStructure&, const VStructure&) = default;
  friend auto operator<=>(const VStructure& x, const VStructure& y) {
    return std::tie(x.collider, x.parent1, x.parent2) <=> std::tie(y.collider, y.parent1, y.parent2);
  }
};

namespace detail {

inline void validate_query(const Pdag& g, const SeparationQuery& q) {
  if (q.a.empty() || q.b.empty()) throw GraphError("d-separation query needs non-empty A and B");
  std::vector<int> owner(g.size(), -1);
  auto mark = [&](const NodeSet& s, int who) {
    for (NodeId v : s) {
      if (v >= g.size()) throw GraphError("d-separation query names unknown node");
      if (owner[v] != -1 && owner[v] != who) {
        throw GraphError("d-separation query sets overlap at " + g.name(v));
      }
      owner[v] = who;
    }
  };
  mark(q.a, 0);
  mark(q.b, 1);
  mark(q.c, 2);
}

}  // namespace detail

/// Reachability ("Bayes ball") d-separation test on a DAG, linear in the
/// number of edges.
inline bool is_d_separated(const Pdag& g, const SeparationQuery& q) {
  if (!g.is_dag()) throw GraphError("d-separation is only defined here for DAGs");
  detail::validate_query(g, q);
  const std::size_t p = g.size();

  std::vector<char> in_c(p, 0);
  for (NodeId v : q.c) in_c[v] = 1;

  // Ancestors of C, C included.
  std::vector<char> anc_c(p, 0);
  std::vector<NodeId> stack(q.c.begin(), q.c.end());
  for (NodeId v : q.c) anc_c[v] = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : g.parents(v)) {
      if (!anc_c[u]) {
        anc_c[u] = 1;
        stack.push_back(u);
      }
    }
  }

  // States: (node, arrived-from-child) = up, (node, arrived-from-parent) = down.
  std::vector<char> target(p, 0);
  for (NodeId v : q.b) target[v] = 1;
  std::vector<char> seen_up(p, 0), seen_down(p, 0);
  std::deque<std::pair<NodeId, bool>> queue;  // bool: travelling up
  for (NodeId v : q.a) queue.emplace_back(v, true);
  while (!queue.empty()) {
    const auto [v, up] = queue.front();
    queue.pop_front();
    auto& seen = up ? seen_up : seen_down;
    if (seen[v]) continue;
    seen[v] = 1;
    if (!in_c[v] && target[v]) return false;
    if (up) {
      if (in_c[v]) continue;
      for (NodeId u : g.parents(v)) queue.emplace_back(u, true);
      for (NodeId u : g.children(v)) queue.emplace_back(u, false);
    } else {
      if (!in_c[v]) {
        for (NodeId u : g.children(v)) queue.emplace_back(u, false);
      }
      if (anc_c[v]) {
        for (NodeId u : g.parents(v)) queue.emplace_back(u, true);
      }
    }
  }
  return true;
}

/// All v-structures, sorted.
inline std::vector<VStructure> v_structures(const Pdag& g) {
  std::vector<VStructure> out;
  for (NodeId c = 0; c < g.size(); ++c) {
    const NodeSet pa = g.parents(c);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], c, pa[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Same skeleton and same v-structures.
inline bool markov_equivalent(const Pdag& d1, const Pdag& d2) {
  if (d1.names() != d2.names()) throw GraphError("markov_equivalent: node sets differ");
  return skeleton(d1) == skeleton(d2) && v_structures(d1) == v_structures(d2);
}

/// Skeleton plus v-structures, everything else undirected.
inline Pdag pattern_of(const Pdag& d) {
  Pdag out = skeleton(d);
  for (const VStructure& v : v_structures(d)) {
    out.add_directed(v.parent1, v.collider);
    out.add_directed(v.parent2, v.collider);
  }
  return out;
}

/// CPDAG of the Markov equivalence class of a DAG: the pattern closed under
/// Meek's rules 1-3.
inline Pdag cpdag_of(const Pdag& d) {
  if (!d.is_dag()) throw GraphError("cpdag_of expects a DAG");
  return meek_closure(pattern_of(d), RuleSet::cpdag());
}

}  // namespace tiered
