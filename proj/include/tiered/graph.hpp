#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tiered {

using NodeId = std::size_t;
using NodeSet = std::vector<NodeId>;  // sorted, duplicate-free

/// Raised for malformed graphs, unknown nodes and guard violations.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge as seen from outside the adjacency matrix. For directed edges
/// `from -> to`; for undirected edges `from < to`.
struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  bool directed = false;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Mixed graph with at most one edge per node pair and no self-loops.
///
/// Stored as a dense p x p mark matrix. `mark(i, j)` describes the edge
/// between i and j from i's point of view. Graphs in this library stay in
/// the hundreds of nodes, so O(p^2) memory buys O(1) adjacency queries.
class Pdag {
 public:
  enum class Mark : std::uint8_t { kNone = 0, kUndirected, kOut, kIn };

  Pdag() = default;

  explicit Pdag(std::vector<std::string> names) : names_(std::move(names)) {
    const std::size_t p = names_.size();
    marks_.assign(p * p, Mark::kNone);
    for (NodeId i = 0; i < p; ++i) {
      if (names_[i].empty()) throw GraphError("empty node label");
      if (!index_.emplace(names_[i], i).second) {
        throw GraphError("duplicate node label '" + names_[i] + "'");
      }
    }
  }

  /// Nodes labelled V1..Vp.
  static Pdag with_size(std::size_t p) {
    std::vector<std::string> names;
    names.reserve(p);
    for (std::size_t i = 0; i < p; ++i) names.push_back("V" + std::to_string(i + 1));
    return Pdag(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  NodeId index(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) throw GraphError("unknown node '" + std::string(label) + "'");
    return it->second;
  }
  bool contains(std::string_view label) const { return index_.count(std::string(label)) > 0; }

  Mark mark(NodeId a, NodeId b) const { return marks_[a * size() + b]; }
  bool adjacent(NodeId a, NodeId b) const { return mark(a, b) != Mark::kNone; }
  bool undirected(NodeId a, NodeId b) const { return mark(a, b) == Mark::kUndirected; }
  /// True iff the edge a -> b is present.
  bool directed(NodeId a, NodeId b) const { return mark(a, b) == Mark::kOut; }

  void add_undirected(NodeId a, NodeId b) { set(a, b, Mark::kUndirected, Mark::kUndirected); }
  void add_directed(NodeId a, NodeId b) { set(a, b, Mark::kOut, Mark::kIn); }
  void remove_edge(NodeId a, NodeId b) { set(a, b, Mark::kNone, Mark::kNone); }

  /// Turns an existing undirected edge a - b into a -> b.
  void orient(NodeId a, NodeId b) {
    if (!undirected(a, b)) {
      throw GraphError("cannot orient " + name(a) + " -> " + name(b) + ": edge is not undirected");
    }
    add_directed(a, b);
  }

  NodeSet parents(NodeId v) const { return collect(v, Mark::kIn); }
  NodeSet children(NodeId v) const { return collect(v, Mark::kOut); }
  NodeSet neighbours(NodeId v) const { return collect(v, Mark::kUndirected); }
  NodeSet adjacents(NodeId v) const {
    NodeSet out;
    for (NodeId u = 0; u < size(); ++u) {
      if (adjacent(v, u)) out.push_back(u);
    }
    return out;
  }

  /// All edges, sorted by (min endpoint, max endpoint).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (NodeId a = 0; a < size(); ++a) {
      for (NodeId b = a + 1; b < size(); ++b) {
        switch (mark(a, b)) {
          case Mark::kNone: break;
          case Mark::kUndirected: out.push_back({a, b, false}); break;
          case Mark::kOut: out.push_back({a, b, true}); break;
          case Mark::kIn: out.push_back({b, a, true}); break;
        }
      }
    }
    return out;
  }

  std::size_t num_edges() const { return count_pairs([](Mark m) { return m != Mark::kNone; }); }
  std::size_t num_directed() const {
    return count_pairs([](Mark m) { return m == Mark::kOut || m == Mark::kIn; });
  }
  std::size_t num_undirected() const {
    return count_pairs([](Mark m) { return m == Mark::kUndirected; });
  }

  bool is_dag() const { return num_undirected() == 0 && !has_directed_cycle_impl(); }

  friend bool operator==(const Pdag& a, const Pdag& b) {
    return a.names_ == b.names_ && a.marks_ == b.marks_;
  }

 private:
  void check(NodeId v) const {
    if (v >= size()) throw GraphError("node index " + std::to_string(v) + " out of range");
  }
  void set(NodeId a, NodeId b, Mark ab, Mark ba) {
    check(a);
    check(b);
    if (a == b) throw GraphError("self-loop at " + name(a));
    marks_[a * size() + b] = ab;
    marks_[b * size() + a] = ba;
  }
  NodeSet collect(NodeId v, Mark m) const {
    check(v);
    NodeSet out;
    for (NodeId u = 0; u < size(); ++u) {
      if (mark(v, u) == m) out.push_back(u);
    }
    return out;
  }
  template <class Pred>
  std::size_t count_pairs(Pred pred) const {
    std::size_t n = 0;
    for (NodeId a = 0; a < size(); ++a) {
      for (NodeId b = a + 1; b < size(); ++b) n += pred(mark(a, b)) ? 1 : 0;
    }
    return n;
  }
  bool has_directed_cycle_impl() const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Mark> marks_;
};

/// A node sequence with consecutive nodes adjacent and all nodes distinct.
using Path = std::vector<NodeId>;

/// Default node-count guard for operations that enumerate paths.
inline constexpr std::size_t kDefaultPathNodeLimit = 25;

// ---------------------------------------------------------------------------
// Structural operations

inline Pdag skeleton(const Pdag& g) {
  Pdag out(g.names());
  for (const Edge& e : g.edges()) out.add_undirected(e.from, e.to);
  return out;
}

inline Pdag undirected_subgraph(const Pdag& g) {
  Pdag out(g.names());
  for (const Edge& e : g.edges()) {
    if (!e.directed) out.add_undirected(e.from, e.to);
  }
  return out;
}

inline Pdag directed_subgraph(const Pdag& g) {
  Pdag out(g.names());
  for (const Edge& e : g.edges()) {
    if (e.directed) out.add_directed(e.from, e.to);
  }
  return out;
}

/// Subgraph over `nodes`, renumbered in increasing order of the original ids.
inline Pdag induced_subgraph(const Pdag& g, std::span<const NodeId> nodes) {
  NodeSet keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<std::string> names;
  for (NodeId v : keep) {
    if (v >= g.size()) throw GraphError("unknown node index " + std::to_string(v));
    names.push_back(g.name(v));
  }
  Pdag out(std::move(names));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      const NodeId a = keep[i];
      const NodeId b = keep[j];
      if (g.undirected(a, b)) out.add_undirected(i, j);
      else if (g.directed(a, b)) out.add_directed(i, j);
      else if (g.directed(b, a)) out.add_directed(j, i);
    }
  }
  return out;
}

inline bool has_directed_cycle(const Pdag& g) {
  // Kahn's algorithm on the directed part.
  const std::size_t p = g.size();
  std::vector<std::size_t> indeg(p, 0);
  for (NodeId v = 0; v < p; ++v) indeg[v] = g.parents(v).size();
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < p; ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  std::size_t seen = 0;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    ++seen;
    for (NodeId c : g.children(v)) {
      if (--indeg[c] == 0) stack.push_back(c);
    }
  }
  return seen != p;
}

inline bool Pdag::has_directed_cycle_impl() const { return has_directed_cycle(*this); }

/// A cycle with at least one directed edge, no edge traversed against its
/// direction, and undirected edges traversable either way.
inline bool has_partially_directed_cycle(const Pdag& g) {
  const std::size_t p = g.size();
  for (const Edge& e : g.edges()) {
    if (!e.directed) continue;
    // Can we get from e.to back to e.from along forward/undirected edges?
    std::vector<char> seen(p, 0);
    std::vector<NodeId> stack{e.to};
    seen[e.to] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      if (v == e.from) return true;
      for (NodeId u = 0; u < p; ++u) {
        if (seen[u]) continue;
        if (g.directed(v, u) || g.undirected(v, u)) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return false;
}

/// Connected components of the undirected subgraph, including singletons.
/// Components are sorted internally and ordered by their smallest node.
inline std::vector<NodeSet> chain_components(const Pdag& g) {
  const std::size_t p = g.size();
  std::vector<char> seen(p, 0);
  std::vector<NodeSet> out;
  for (NodeId s = 0; s < p; ++s) {
    if (seen[s]) continue;
    NodeSet comp;
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId u : g.neighbours(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Maximum cardinality search order (visit order; reverse is a candidate
/// perfect elimination ordering).
inline std::vector<NodeId> maximum_cardinality_search(const Pdag& g) {
  const std::size_t p = g.size();
  std::vector<std::size_t> weight(p, 0);
  std::vector<char> done(p, 0);
  std::vector<NodeId> order;
  order.reserve(p);
  for (std::size_t step = 0; step < p; ++step) {
    NodeId best = p;
    for (NodeId v = 0; v < p; ++v) {
      if (!done[v] && (best == p || weight[v] > weight[best])) best = v;
    }
    done[best] = 1;
    order.push_back(best);
    for (NodeId u : g.adjacents(best)) {
      if (!done[u]) ++weight[u];
    }
  }
  return order;
}

/// Chordality of an undirected graph via MCS followed by a perfect
/// elimination ordering check (Tarjan & Yannakakis).
inline bool is_chordal(const Pdag& g) {
  if (g.num_directed() != 0) throw GraphError("is_chordal expects an undirected graph");
  const std::size_t p = g.size();
  const std::vector<NodeId> order = maximum_cardinality_search(g);
  std::vector<std::size_t> pos(p);
  for (std::size_t i = 0; i < p; ++i) pos[order[i]] = i;
  // For each v, its earlier-visited neighbours must form a clique. It is
  // enough to check they are all adjacent to the latest of them.
  for (NodeId v : order) {
    NodeSet earlier;
    for (NodeId u : g.adjacents(v)) {
      if (pos[u] < pos[v]) earlier.push_back(u);
    }
    if (earlier.size() < 2) continue;
    const NodeId parent = *std::max_element(
        earlier.begin(), earlier.end(), [&](NodeId a, NodeId b) { return pos[a] < pos[b]; });
    for (NodeId u : earlier) {
      if (u != parent && !g.adjacent(u, parent)) return false;
    }
  }
  return true;
}

inline void require_path_guard(const Pdag& g, std::size_t node_limit, const char* op) {
  if (g.size() > node_limit) {
    throw GraphError(std::string(op) + ": graph has " + std::to_string(g.size()) +
                     " nodes, above the exhaustive path limit of " + std::to_string(node_limit));
  }
}

/// Depth-first enumeration of simple paths starting at `from` whose every
/// consecutive triple is unshielded. `visit` sees each such path (of at
/// least two nodes); return false from `visit` to stop extending it.
/// `step` decides which adjacent nodes may follow (defaults to any).
template <class Visit, class Step>
void for_each_unshielded_path_from(const Pdag& g, NodeId from, Visit&& visit, Step&& step) {
  Path path{from};
  std::vector<char> on_path(g.size(), 0);
  on_path[from] = 1;
  std::function<void()> extend = [&]() {
    const NodeId last = path.back();
    for (NodeId next = 0; next < g.size(); ++next) {
      if (on_path[next] || !g.adjacent(last, next) || !step(last, next)) continue;
      if (path.size() >= 2 && g.adjacent(path[path.size() - 2], next)) continue;
      path.push_back(next);
      on_path[next] = 1;
      if (visit(static_cast<const Path&>(path))) extend();
      on_path[next] = 0;
      path.pop_back();
    }
  };
  extend();
}

template <class Visit>
void for_each_unshielded_path_from(const Pdag& g, NodeId from, Visit&& visit) {
  for_each_unshielded_path_from(g, from, std::forward<Visit>(visit),
                                [](NodeId, NodeId) { return true; });
}

/// All unshielded paths from `from` to `to`, lexicographically sorted.
inline std::vector<Path> find_unshielded_paths(const Pdag& g, NodeId from, NodeId to,
                                               std::size_t node_limit = kDefaultPathNodeLimit) {
  require_path_guard(g, node_limit, "find_unshielded_paths");
  if (from >= g.size() || to >= g.size()) throw GraphError("unknown node index");
  std::vector<Path> out;
  if (from == to) return out;
  for_each_unshielded_path_from(g, from, [&](const Path& path) {
    if (path.back() == to) {
      out.push_back(path);
      return false;
    }
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Whether consecutive nodes of `path` are adjacent in `g` and all distinct.
inline bool is_valid_path(const Pdag& g, std::span<const NodeId> path) {
  if (path.size() < 2) return false;
  std::vector<char> seen(g.size(), 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= g.size() || seen[path[i]]) return false;
    seen[path[i]] = 1;
    if (i > 0 && !g.adjacent(path[i - 1], path[i])) return false;
  }
  return true;
}

inline std::string format_path(const Pdag& g, std::span<const NodeId> path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) {
      const NodeId a = path[i - 1];
      const NodeId b = path[i];
      out += g.directed(a, b) ? " -> " : g.directed(b, a) ? " <- " : " -- ";
    }
    out += g.name(path[i]);
  }
  return out;
}

inline std::string format_edge(const Pdag& g, const Edge& e) {
  return g.name(e.from) + (e.directed ? " -> " : " -- ") + g.name(e.to);
}

}  // namespace tiered
