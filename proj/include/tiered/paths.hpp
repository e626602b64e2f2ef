#pragma once

#include <optional>
#include <vector>

#include "tiered/graph.hpp"

namespace tiered {

/// Default bound on path length (in edges) for exhaustive path scans.
inline constexpr std::size_t kDefaultMaxPathEdges = 10;

struct PathClassification {
  bool possibly_causal = false;
  bool b_possibly_causal = false;
};

namespace detail {
inline void require_valid_path(const Pdag& g, std::span<const NodeId> path) {
  if (!is_valid_path(g, path)) throw GraphError("not a path in the graph");
}
}  // namespace detail

/// No edge on the path points back towards its start.
inline bool is_possibly_causal(const Pdag& g, std::span<const NodeId> path) {
  detail::require_valid_path(g, path);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (g.directed(path[i + 1], path[i])) return false;
  }
  return true;
}

/// No edge of g, on or off the path, points from a later path node to an
/// earlier one.
inline bool is_b_possibly_causal(const Pdag& g, std::span<const NodeId> path) {
  detail::require_valid_path(g, path);
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      if (g.directed(path[j], path[i])) return false;
    }
  }
  return true;
}

inline PathClassification classify_path(const Pdag& g, std::span<const NodeId> path) {
  return {is_possibly_causal(g, path), is_b_possibly_causal(g, path)};
}

struct AdjustmentEquivalenceReport {
  std::size_t paths_checked = 0;
  std::optional<Path> counterexample;
  bool equivalent() const { return !counterexample.has_value(); }
};

/// Checks every simple path of at most `max_edges` edges (in both
/// directions) for agreement between the possibly-causal and
/// b-possibly-causal classifications. On tiered MPDAGs the two coincide.
inline AdjustmentEquivalenceReport check_adjustment_equivalence(
    const Pdag& g, std::size_t max_edges = kDefaultMaxPathEdges,
    std::size_t node_limit = kDefaultPathNodeLimit) {
  require_path_guard(g, node_limit, "check_adjustment_equivalence");
  AdjustmentEquivalenceReport report;
  Path path;
  std::vector<char> on_path(g.size(), 0);
  std::function<bool()> extend = [&]() {
    if (path.size() >= 2) {
      ++report.paths_checked;
      if (is_possibly_causal(g, path) != is_b_possibly_causal(g, path)) {
        report.counterexample = path;
        return false;
      }
    }
    if (path.size() > max_edges) return true;
    for (NodeId next : g.adjacents(path.back())) {
      if (on_path[next]) continue;
      path.push_back(next);
      on_path[next] = 1;
      const bool go_on = extend();
      on_path[next] = 0;
      path.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (NodeId s = 0; s < g.size() && report.equivalent(); ++s) {
    path = {s};
    on_path[s] = 1;
    extend();
    on_path[s] = 0;
  }
  return report;
}

}  // namespace tiered
