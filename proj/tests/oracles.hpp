#pragma once

// Brute-force reference implementations used to check the library. Each one
// takes the slow, obvious route and shares no code with the routine under
// test beyond the graph container.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tiered/tiered.hpp"

namespace oracle {

using tiered::NodeId;
using tiered::NodeSet;
using tiered::Pdag;

inline bool has_cycle_dfs(const Pdag& g) {
  const std::size_t p = g.size();
  std::vector<int> state(p, 0);
  std::function<bool(NodeId)> visit = [&](NodeId v) {
    state[v] = 1;
    for (NodeId w = 0; w < p; ++w) {
      if (!g.directed(v, w)) continue;
      if (state[w] == 1) return true;
      if (state[w] == 0 && visit(w)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (NodeId v = 0; v < p; ++v) {
    if (state[v] == 0 && visit(v)) return true;
  }
  return false;
}

inline std::vector<NodeId> descendants_inclusive(const Pdag& g, NodeId v) {
  std::vector<char> seen(g.size(), 0);
  std::vector<NodeId> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w = 0; w < g.size(); ++w) {
      if (g.directed(u, w) && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId w = 0; w < g.size(); ++w) {
    if (seen[w]) out.push_back(w);
  }
  return out;
}

/// d-separation by listing every simple path between A and B.
inline bool d_separated(const Pdag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  const std::size_t p = dag.size();
  std::vector<char> in_c(p, 0);
  for (NodeId v : c) in_c[v] = 1;
  auto active = [&](const std::vector<NodeId>& path) {
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const bool collider = dag.directed(path[i - 1], path[i]) && dag.directed(path[i + 1], path[i]);
      if (collider) {
        bool hit = false;
        for (NodeId d : descendants_inclusive(dag, path[i])) hit = hit || in_c[d];
        if (!hit) return false;
      } else if (in_c[path[i]]) {
        return false;
      }
    }
    return true;
  };
  std::vector<NodeId> path;
  std::vector<char> on(p, 0);
  std::function<bool(NodeId)> search = [&](NodeId v) {
    if (std::binary_search(b.begin(), b.end(), v)) return active(path);
    for (NodeId w = 0; w < p; ++w) {
      if (!dag.adjacent(v, w) || on[w]) continue;
      path.push_back(w);
      on[w] = 1;
      const bool found = search(w);
      on[w] = 0;
      path.pop_back();
      if (found) return true;
    }
    return false;
  };
  for (NodeId s : a) {
    path = {s};
    on.assign(p, 0);
    on[s] = 1;
    if (search(s)) return false;
  }
  return true;
}

/// Chordal iff no induced subgraph on four or more nodes is a cycle.
inline bool chordal(const Pdag& g) {
  const std::size_t p = g.size();
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    std::vector<NodeId> s;
    for (NodeId v = 0; v < p; ++v) {
      if ((mask >> v) & 1u) s.push_back(v);
    }
    if (s.size() < 4) continue;
    bool all_degree_two = true;
    for (NodeId v : s) {
      int deg = 0;
      for (NodeId w : s) deg += g.adjacent(v, w) ? 1 : 0;
      all_degree_two = all_degree_two && deg == 2;
    }
    if (!all_degree_two) continue;
    // 2-regular: a cycle iff connected.
    std::vector<char> seen(p, 0);
    std::vector<NodeId> stack{s[0]};
    seen[s[0]] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : s) {
        if (g.adjacent(v, w) && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count == s.size()) return false;
  }
  return true;
}

/// Connected components of the undirected edges, by union-find.
inline std::vector<NodeSet> components(const Pdag& g) {
  std::vector<NodeId> parent(g.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<NodeId(NodeId)> find = [&](NodeId v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (NodeId a = 0; a < g.size(); ++a) {
    for (NodeId b = a + 1; b < g.size(); ++b) {
      if (g.undirected(a, b)) parent[find(a)] = find(b);
    }
  }
  std::map<NodeId, NodeSet> groups;
  for (NodeId v = 0; v < g.size(); ++v) groups[find(v)].push_back(v);
  std::vector<NodeSet> out;
  for (auto& [_, s] : groups) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

/// Unshielded colliders by scanning all ordered triples.
inline std::set<std::tuple<NodeId, NodeId, NodeId>> colliders(const Pdag& g) {
  std::set<std::tuple<NodeId, NodeId, NodeId>> out;
  const std::size_t p = g.size();
  for (NodeId a = 0; a < p; ++a) {
    for (NodeId b = 0; b < p; ++b) {
      for (NodeId c = a + 1; c < p; ++c) {
        if (a != b && b != c && g.directed(a, b) && g.directed(c, b) && !g.adjacent(a, c)) {
          out.insert({a, b, c});
        }
      }
    }
  }
  return out;
}

/// Every DAG on p nodes (each pair absent, forward or backward), acyclic only.
inline std::vector<Pdag> all_dags(std::size_t p) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < p; ++a) {
    for (NodeId b = a + 1; b < p; ++b) pairs.emplace_back(a, b);
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
  std::vector<Pdag> out;
  for (std::size_t code = 0; code < total; ++code) {
    Pdag d = Pdag::with_size(p);
    std::size_t rest = code;
    for (const auto& [a, b] : pairs) {
      const std::size_t digit = rest % 3;
      rest /= 3;
      if (digit == 1) d.add_directed(a, b);
      if (digit == 2) d.add_directed(b, a);
    }
    if (!has_cycle_dfs(d)) out.push_back(std::move(d));
  }
  return out;
}

/// Every undirected graph on p nodes.
inline std::vector<Pdag> all_undirected(std::size_t p) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < p; ++a) {
    for (NodeId b = a + 1; b < p; ++b) pairs.emplace_back(a, b);
  }
  std::vector<Pdag> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    Pdag g = Pdag::with_size(p);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((mask >> i) & 1u) g.add_undirected(pairs[i].first, pairs[i].second);
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// DAGs with the skeleton of c that keep c's directed edges, are acyclic and
/// have c's v-structures.
inline std::vector<Pdag> extensions(const Pdag& c) {
  std::vector<std::pair<NodeId, NodeId>> free;
  for (NodeId a = 0; a < c.size(); ++a) {
    for (NodeId b = a + 1; b < c.size(); ++b) {
      if (c.undirected(a, b)) free.emplace_back(a, b);
    }
  }
  const auto target = colliders(c);
  std::vector<Pdag> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    Pdag d = c;
    for (std::size_t i = 0; i < free.size(); ++i) {
      const auto [a, b] = free[i];
      d.remove_edge(a, b);
      if ((mask >> i) & 1u) d.add_directed(b, a);
      else d.add_directed(a, b);
    }
    if (!has_cycle_dfs(d) && colliders(d) == target) out.push_back(std::move(d));
  }
  return out;
}

/// Members of c's class with no edge pointing into an earlier tier.
inline std::vector<Pdag> restricted_class(const Pdag& c, const tiered::TieredOrdering& tau) {
  std::vector<Pdag> out;
  for (Pdag& d : extensions(c)) {
    bool ok = true;
    for (NodeId a = 0; a < d.size(); ++a) {
      for (NodeId b = 0; b < d.size(); ++b) {
        if (d.directed(a, b) && tau.tier(a) > tau.tier(b)) ok = false;
      }
    }
    if (ok) out.push_back(std::move(d));
  }
  return out;
}

/// Edges on which all DAGs agree are directed, the rest undirected.
inline Pdag invariant_edges(const std::vector<Pdag>& dags) {
  Pdag out = tiered::skeleton(dags.front());
  for (NodeId a = 0; a < out.size(); ++a) {
    for (NodeId b = 0; b < out.size(); ++b) {
      if (!out.adjacent(a, b)) continue;
      const bool all = std::all_of(dags.begin(), dags.end(), [&](const Pdag& d) { return d.directed(a, b); });
      if (all) out.orient(a, b);
    }
  }
  return out;
}

/// Quantile with 1-based order statistics, same interpolation as R's type 7.
inline double quantile(std::vector<double> v, double prob) {
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * prob + 1.0;
  const auto k = static_cast<std::size_t>(h);
  if (k >= v.size()) return v.back();
  return v[k - 1] + (h - static_cast<double>(k)) * (v[k] - v[k - 1]);
}

/// Random DAG over V1..Vp numbered in topological order, each forward pair
/// present with probability prob.
inline Pdag random_dag(std::size_t p, double prob, tiered::Rng& rng) {
  Pdag d = Pdag::with_size(p);
  for (NodeId a = 0; a < p; ++a) {
    for (NodeId b = a + 1; b < p; ++b) {
      if (rng.bernoulli(prob)) d.add_directed(a, b);
    }
  }
  return d;
}

/// Random non-decreasing tier assignment over nodes already in topological
/// order, so it never contradicts the DAG.
inline tiered::TieredOrdering random_monotone_tiers(std::size_t p, int max_tiers, tiered::Rng& rng) {
  std::vector<int> tiers(p);
  int t = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (i > 0 && t < max_tiers && rng.bernoulli(0.35)) ++t;
    tiers[i] = t;
  }
  return tiered::TieredOrdering(tiers);
}

/// Random coarsening: merges each boundary between consecutive tiers with
/// probability prob.
inline tiered::TieredOrdering random_coarsening(const tiered::TieredOrdering& tau, double prob, tiered::Rng& rng) {
  std::vector<int> relabel(static_cast<std::size_t>(tau.num_tiers()) + 1, 1);
  for (int t = 2; t <= tau.num_tiers(); ++t) relabel[t] = relabel[t - 1] + (rng.bernoulli(prob) ? 0 : 1);
  std::vector<int> out(tau.size());
  for (NodeId v = 0; v < tau.size(); ++v) out[v] = relabel[tau.tier(v)];
  return tiered::TieredOrdering(out);
}

/// Relabels nodes by a random permutation so topological order and node
/// index no longer coincide.
inline std::pair<Pdag, tiered::TieredOrdering> shuffle_nodes(const Pdag& g, const tiered::TieredOrdering& tau,
                                                             tiered::Rng& rng) {
  std::vector<NodeId> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  Pdag out = Pdag::with_size(g.size());
  std::vector<int> tiers(g.size());
  for (NodeId a = 0; a < g.size(); ++a) {
    tiers[perm[a]] = tau.tier(a);
    for (NodeId b = 0; b < g.size(); ++b) {
      if (g.directed(a, b)) out.add_directed(perm[a], perm[b]);
      else if (a < b && g.undirected(a, b)) out.add_undirected(perm[a], perm[b]);
    }
  }
  return {out, tiered::TieredOrdering(tiers)};
}

/// A random CPDAG with a consistent tiered ordering.
struct Instance {
  Pdag dag;
  Pdag cpdag;
  tiered::TieredOrdering tau;
};

inline Instance random_instance(std::size_t p, double prob, int max_tiers, tiered::Rng& rng) {
  Pdag d = random_dag(p, prob, rng);
  tiered::TieredOrdering tau = random_monotone_tiers(p, max_tiers, rng);
  auto [shuffled, tau2] = shuffle_nodes(d, tau, rng);
  return {shuffled, tiered::cpdag_of(shuffled), tau2};
}

}  // namespace oracle
