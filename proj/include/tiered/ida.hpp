#pragma once

// Candidate parent sets across the DAGs of a tiered MPDAG (local and joint
// IDA). On tiered MPDAGs both run directly, with no extra validity checks.

#include <cstdint>
#include <future>
#include <map>
#include <vector>

#include "tiered/graph.hpp"
#include "tiered/independence.hpp"

namespace tiered {

/// Multiset with exact integer multiplicities, keyed canonically.
template <class Key>
class Multiset {
 public:
  void add(const Key& key, std::uint64_t count = 1) {
    if (count > 0) entries_[key] += count;
  }
  std::uint64_t multiplicity(const Key& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second;
  }
  std::vector<Key> distinct() const {
    std::vector<Key> out;
    for (const auto& [k, _] : entries_) out.push_back(k);
    return out;
  }
  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [_, c] : entries_) n += c;
    return n;
  }
  std::size_t size() const { return entries_.size(); }
  const std::map<Key, std::uint64_t>& entries() const { return entries_; }

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  std::map<Key, std::uint64_t> entries_;
};

/// Parent sets of a single node.
using ParentSetMultiset = Multiset<NodeSet>;
/// Tuples of parent sets, one per queried node in increasing node order.
using JointParentSetMultiset = Multiset<std::vector<NodeSet>>;

inline constexpr std::size_t kDefaultMaxNeighbours = 20;
inline constexpr std::size_t kDefaultMaxComponentEdges = 12;

/// Would orienting s -> x for every s in `s` and x -> z for the other
/// neighbours create a v-structure at x that g does not already have?
inline bool creates_new_v_structure(const Pdag& g, NodeId x, const NodeSet& s) {
  const NodeSet pa = g.parents(x);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!g.adjacent(s[i], s[j])) return true;
    }
    for (NodeId q : pa) {
      if (!g.adjacent(s[i], q)) return true;
    }
  }
  return false;
}

/// Local IDA: for every subset S of x's undirected neighbours that creates no
/// new v-structure with x as collider, the set pa(x) | S.
inline ParentSetMultiset local_ida(const Pdag& g, NodeId x,
                                   std::size_t max_neighbours = kDefaultMaxNeighbours) {
  if (x >= g.size()) throw GraphError("local_ida: unknown node");
  const NodeSet nb = g.neighbours(x);
  if (nb.size() > max_neighbours) {
    throw GraphError("local_ida: " + std::to_string(nb.size()) + " undirected neighbours exceed " +
                     std::to_string(max_neighbours));
  }
  const NodeSet pa = g.parents(x);
  ParentSetMultiset out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nb.size()); ++mask) {
    NodeSet s;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if ((mask >> i) & 1u) s.push_back(nb[i]);
    }
    if (creates_new_v_structure(g, x, s)) continue;
    NodeSet parents = pa;
    parents.insert(parents.end(), s.begin(), s.end());
    std::sort(parents.begin(), parents.end());
    out.add(parents);
  }
  return out;
}

/// All acyclic orientations of an undirected graph without unshielded
/// colliders.
inline std::vector<Pdag> orient_without_v_structures(const Pdag& undirected,
                                                     std::size_t max_edges) {
  const std::vector<Edge> edges = undirected.edges();
  if (edges.size() > max_edges) {
    throw GraphError("chain component has " + std::to_string(edges.size()) +
                     " edges, above the enumeration limit of " + std::to_string(max_edges));
  }
  std::vector<Pdag> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    Pdag d = undirected;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if ((mask >> i) & 1u) d.orient(edges[i].to, edges[i].from);
      else d.orient(edges[i].from, edges[i].to);
    }
    if (!has_directed_cycle(d) && v_structures(d).empty()) out.push_back(std::move(d));
  }
  return out;
}

/// Joint IDA: orient each chain component touching xs independently, combine
/// the per-component results, and add the parents from the directed part.
inline JointParentSetMultiset joint_ida(const Pdag& g, NodeSet xs,
                                        std::size_t max_component_edges = kDefaultMaxComponentEdges) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (NodeId x : xs) {
    if (x >= g.size()) throw GraphError("joint_ida: unknown node");
  }
  const Pdag gu = undirected_subgraph(g);
  const Pdag gd = directed_subgraph(g);

  struct Job {
    std::vector<std::size_t> slots;  // positions in xs of nodes in the component
    std::future<JointParentSetMultiset> result;
  };
  std::vector<Job> jobs;
  for (const NodeSet& comp : chain_components(gu)) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (std::binary_search(comp.begin(), comp.end(), xs[i])) slots.push_back(i);
    }
    if (slots.empty()) continue;
    auto enumerate = [&gu, &xs, comp, slots, max_component_edges]() {
      JointParentSetMultiset local;
      for (const Pdag& d : orient_without_v_structures(induced_subgraph(gu, comp), max_component_edges)) {
        std::vector<NodeSet> sets;
        for (std::size_t slot : slots) {
          const auto pos = std::lower_bound(comp.begin(), comp.end(), xs[slot]) - comp.begin();
          NodeSet pa;
          for (NodeId q : d.parents(static_cast<NodeId>(pos))) pa.push_back(comp[q]);
          sets.push_back(std::move(pa));
        }
        local.add(sets);
      }
      return local;
    };
    jobs.push_back({slots, std::async(std::launch::async, enumerate)});
  }

  // Partial tuples: parents within the undirected part, merged in component order.
  JointParentSetMultiset acc;
  acc.add(std::vector<NodeSet>(xs.size()));
  for (Job& job : jobs) {
    const JointParentSetMultiset local = job.result.get();
    JointParentSetMultiset next;
    for (const auto& [partial, c1] : acc.entries()) {
      for (const auto& [sets, c2] : local.entries()) {
        std::vector<NodeSet> merged = partial;
        for (std::size_t k = 0; k < job.slots.size(); ++k) merged[job.slots[k]] = sets[k];
        next.add(merged, c1 * c2);
      }
    }
    acc = std::move(next);
  }

  JointParentSetMultiset out;
  for (const auto& [partial, count] : acc.entries()) {
    std::vector<NodeSet> full = partial;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (NodeId q : gd.parents(xs[i])) full[i].push_back(q);
      std::sort(full[i].begin(), full[i].end());
    }
    out.add(full, count);
  }
  return out;
}

}  // namespace tiered
