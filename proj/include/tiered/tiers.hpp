#pragma once

// Comparing tiered orderings on a fixed CPDAG.
//
// Everything here works on C_u^tau: the undirected part of the CPDAG with its
// cross-tier edges oriented by tau. Two orderings give the same tiered MPDAG
// exactly when
//   (i)  they agree on the first cross-tier edges of every earliest
//        unshielded path, and
//   (ii) they agree on every fully shielded edge being cross-tier or not.
//
// A path pi1 is earlier than pi2 when some node of pi1 sits in a tier strictly
// below every node of pi2. An unshielded path is earliest when no earlier
// unshielded path shares an edge with it.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiered/graph.hpp"
#include "tiered/orientation.hpp"
#include "tiered/ordering.hpp"

namespace tiered {

class IncompatibleOrderings : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Refinement { kEqual, kFirstFiner, kSecondFiner, kIncomparable };

inline const char* to_string(Refinement r) {
  switch (r) {
    case Refinement::kEqual: return "equal";
    case Refinement::kFirstFiner: return "first-finer";
    case Refinement::kSecondFiner: return "second-finer";
    case Refinement::kIncomparable: return "incomparable";
  }
  return "?";
}

struct TierComparison {
  Refinement verdict = Refinement::kEqual;
  /// Pairs (a, b) with a strictly before b in the first ordering only.
  std::vector<NodePair> ordered_only_in_first;
  /// Pairs (a, b) with a strictly before b in the second ordering only.
  std::vector<NodePair> ordered_only_in_second;
};

/// Refinement relation between two orderings of the same node set. Throws
/// IncompatibleOrderings if some pair is ordered oppositely.
inline TierComparison compare_refinement(const TieredOrdering& t1, const TieredOrdering& t2) {
  if (t1.size() != t2.size()) throw GraphError("tiered orderings differ in size");
  TierComparison out;
  for (NodeId a = 0; a < t1.size(); ++a) {
    for (NodeId b = 0; b < t1.size(); ++b) {
      const bool in1 = t1.before(a, b);
      const bool in2 = t2.before(a, b);
      if ((in1 && t2.before(b, a)) || (in2 && t1.before(b, a))) {
        throw IncompatibleOrderings("orderings disagree on the order of nodes " +
                                    std::to_string(a) + " and " + std::to_string(b));
      }
      if (in1 && !in2) out.ordered_only_in_first.emplace_back(a, b);
      if (in2 && !in1) out.ordered_only_in_second.emplace_back(a, b);
    }
  }
  const bool first_extra = !out.ordered_only_in_first.empty();
  const bool second_extra = !out.ordered_only_in_second.empty();
  out.verdict = !first_extra && !second_extra ? Refinement::kEqual
                : !second_extra               ? Refinement::kFirstFiner
                : !first_extra                ? Refinement::kSecondFiner
                                              : Refinement::kIncomparable;
  return out;
}

/// Undirected part of c with cross-tier edges oriented by tau.
inline Pdag orient_undirected_part(const Pdag& c, const TieredOrdering& tau) {
  Pdag out = undirected_subgraph(c);
  for (const Edge& e : out.edges()) {
    if (tau.before(e.from, e.to)) out.orient(e.from, e.to);
    else if (tau.before(e.to, e.from)) out.orient(e.to, e.from);
  }
  return out;
}

/// Every unshielded path of an undirected graph, each listed once with
/// front() < back(), plus per-edge bookkeeping.
class UnshieldedPaths {
 public:
  explicit UnshieldedPaths(const Pdag& undirected, std::size_t node_limit = kDefaultPathNodeLimit)
      : size_(undirected.size()) {
    require_path_guard(undirected, node_limit, "unshielded path enumeration");
    for (NodeId s = 0; s < undirected.size(); ++s) {
      for_each_unshielded_path_from(undirected, s, [&](const Path& path) {
        if (path.front() < path.back()) paths_.push_back(path);
        return true;
      });
    }
    std::sort(paths_.begin(), paths_.end());
  }

  const std::vector<Path>& paths() const { return paths_; }

  /// Flags paths that are earliest under tau.
  std::vector<char> earliest(const TieredOrdering& tau) const {
    const std::size_t p = size_;
    // Lowest tier reached by any unshielded path through each edge.
    std::vector<int> edge_min(p * p, std::numeric_limits<int>::max());
    std::vector<int> path_min(paths_.size());
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Path& path = paths_[i];
      int m = std::numeric_limits<int>::max();
      for (NodeId v : path) m = std::min(m, tau.tier(v));
      path_min[i] = m;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        int& slot = edge_min[key(path[k], path[k + 1])];
        slot = std::min(slot, m);
      }
    }
    std::vector<char> out(paths_.size(), 1);
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Path& path = paths_[i];
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        if (edge_min[key(path[k], path[k + 1])] < path_min[i]) {
          out[i] = 0;
          break;
        }
      }
    }
    return out;
  }

 private:
  std::size_t key(NodeId a, NodeId b) const {
    return std::min(a, b) * size_ + std::max(a, b);
  }

  std::size_t size_;
  std::vector<Path> paths_;
};

/// Cross-tier edges closest to the source of an unshielded path: scanning
/// front to back, the first edge pointing towards back(); scanning back to
/// front, the first edge pointing towards front(). At most two, ordered by
/// position along the path.
inline std::vector<Edge> first_cross_tier_edges(const Path& path, const TieredOrdering& tau) {
  std::optional<std::size_t> fwd, bwd;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (tau.before(path[k], path[k + 1])) {
      fwd = k;
      break;
    }
  }
  for (std::size_t k = path.size() - 1; k >= 1; --k) {
    if (tau.before(path[k], path[k - 1])) {
      bwd = k - 1;
      break;
    }
  }
  std::vector<Edge> out;
  if (bwd) out.push_back({path[*bwd + 1], path[*bwd], true});
  if (fwd) out.push_back({path[*fwd], path[*fwd + 1], true});
  if (out.size() == 2 && *fwd < *bwd) std::swap(out[0], out[1]);
  return out;
}

/// adj(a) \ {b} == adj(b) \ {a}: the edge lies on no unshielded path of
/// three or more nodes.
inline bool is_fully_shielded(const Pdag& g, NodeId a, NodeId b) {
  for (NodeId v = 0; v < g.size(); ++v) {
    if (v == a || v == b) continue;
    if (g.adjacent(a, v) != g.adjacent(b, v)) return false;
  }
  return true;
}

struct EarliestPath {
  Path path;
  std::vector<Edge> first_cross_tier;
};

struct CrossTierEdgeReport {
  Pdag oriented;  ///< C_u^tau
  /// Earliest unshielded paths that are not a proper subpath of another
  /// earliest path.
  std::vector<EarliestPath> earliest_paths;
  std::vector<Edge> fully_shielded_cross_tier;
};

namespace detail {

inline bool is_subpath(const Path& inner, const Path& outer) {
  if (inner.size() >= outer.size()) return false;
  auto fwd = std::search(outer.begin(), outer.end(), inner.begin(), inner.end());
  if (fwd != outer.end()) return true;
  return std::search(outer.rbegin(), outer.rend(), inner.begin(), inner.end()) != outer.rend();
}

inline std::vector<Edge> fully_shielded_cross_tier(const Pdag& cu, const TieredOrdering& tau) {
  std::vector<Edge> out;
  for (const Edge& e : cu.edges()) {
    if (!is_fully_shielded(cu, e.from, e.to)) continue;
    if (tau.before(e.from, e.to)) out.push_back({e.from, e.to, true});
    else if (tau.before(e.to, e.from)) out.push_back({e.to, e.from, true});
  }
  return out;
}

inline void require_consistent(const Pdag& c, const TieredOrdering& tau) {
  if (const auto bad = check_consistency(c, tau); !bad.empty()) {
    throw InconsistencyError("tiered ordering contradicts the CPDAG at " + format_edge(c, bad[0]));
  }
}

}  // namespace detail

inline CrossTierEdgeReport cross_tier_report(const Pdag& c, const TieredOrdering& tau,
                                             std::size_t node_limit = kDefaultPathNodeLimit) {
  detail::require_consistent(c, tau);
  const Pdag cu = undirected_subgraph(c);
  const UnshieldedPaths paths(cu, node_limit);
  const auto earliest = paths.earliest(tau);

  std::vector<const Path*> kept;
  for (std::size_t i = 0; i < paths.paths().size(); ++i) {
    if (earliest[i]) kept.push_back(&paths.paths()[i]);
  }
  CrossTierEdgeReport report{orient_undirected_part(c, tau), {}, {}};
  for (const Path* path : kept) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const Path* other) {
      return detail::is_subpath(*path, *other);
    });
    if (!covered) report.earliest_paths.push_back({*path, first_cross_tier_edges(*path, tau)});
  }
  report.fully_shielded_cross_tier = detail::fully_shielded_cross_tier(cu, tau);
  return report;
}

struct EquivalenceResult {
  bool equivalent = true;
  bool first_edges_agree = true;     ///< condition (i)
  bool shielded_edges_agree = true;  ///< condition (ii)
  /// Disagreeing edge, as oriented by whichever ordering makes it cross-tier.
  std::optional<Edge> witness;
  /// Earliest path on which the first cross-tier edges differ, if any.
  std::optional<Path> witness_path;
};

/// Decides whether two orderings yield the same tiered MPDAG from the
/// first-cross-tier-edge and fully-shielded-edge conditions, without
/// building either MPDAG.
inline EquivalenceResult tiers_equivalent(const Pdag& c, const TieredOrdering& t1,
                                          const TieredOrdering& t2,
                                          std::size_t node_limit = kDefaultPathNodeLimit) {
  detail::require_consistent(c, t1);
  detail::require_consistent(c, t2);
  const Pdag cu = undirected_subgraph(c);
  const UnshieldedPaths paths(cu, node_limit);
  const auto early1 = paths.earliest(t1);
  const auto early2 = paths.earliest(t2);

  EquivalenceResult out;
  for (std::size_t i = 0; i < paths.paths().size() && out.first_edges_agree; ++i) {
    if (!early1[i] && !early2[i]) continue;
    const Path& path = paths.paths()[i];
    const auto f1 = first_cross_tier_edges(path, t1);
    const auto f2 = first_cross_tier_edges(path, t2);
    if (f1 == f2) continue;
    out.first_edges_agree = false;
    out.witness_path = path;
    // Report the disagreeing edge nearest the front of the path.
    auto position = [&](const Edge& e) {
      const auto a = std::find(path.begin(), path.end(), e.from);
      const auto b = std::find(path.begin(), path.end(), e.to);
      return std::min(a, b) - path.begin();
    };
    std::vector<Edge> diff;
    for (const Edge& e : f1) {
      if (std::find(f2.begin(), f2.end(), e) == f2.end()) diff.push_back(e);
    }
    for (const Edge& e : f2) {
      if (std::find(f1.begin(), f1.end(), e) == f1.end()) diff.push_back(e);
    }
    out.witness = *std::min_element(diff.begin(), diff.end(), [&](const Edge& a, const Edge& b) {
      return position(a) < position(b);
    });
  }
  const auto s1 = detail::fully_shielded_cross_tier(cu, t1);
  const auto s2 = detail::fully_shielded_cross_tier(cu, t2);
  for (const auto& [mine, theirs] : {std::pair{&s1, &s2}, std::pair{&s2, &s1}}) {
    for (const Edge& e : *mine) {
      if (std::find(theirs->begin(), theirs->end(), e) == theirs->end()) {
        out.shielded_edges_agree = false;
        if (!out.witness) out.witness = e;
      }
    }
  }
  out.equivalent = out.first_edges_agree && out.shielded_edges_agree;
  return out;
}

/// PDAG g1 is contained in g2: same skeleton and every directed edge of g2
/// also directed (the same way) in g1.
inline bool contained_in(const Pdag& g1, const Pdag& g2) {
  if (skeleton(g1) != skeleton(g2)) return false;
  for (const Edge& e : g2.edges()) {
    if (e.directed && !g1.directed(e.from, e.to)) return false;
  }
  return true;
}

enum class Informativeness { kMoreInformative, kEquivalent, kLessInformative, kIncomparable };

inline const char* to_string(Informativeness v) {
  switch (v) {
    case Informativeness::kMoreInformative: return "more-informative";
    case Informativeness::kEquivalent: return "equivalent";
    case Informativeness::kLessInformative: return "less-informative";
    case Informativeness::kIncomparable: return "incomparable";
  }
  return "?";
}

struct InformativenessResult {
  Informativeness verdict = Informativeness::kEquivalent;
  /// Edges directed in exactly one of the two MPDAGs, as oriented there.
  std::vector<Edge> only_first;
  std::vector<Edge> only_second;
  // Sufficient conditions for "first more informative than second",
  // evaluated on C_u^t1 and C_u^t2. Diagnostic only.
  bool cond_i = false;    ///< first edges on t2-earliest paths are cross-tier under t1
  bool cond_ii = false;   ///< fully shielded t2 cross-tier edges are cross-tier under t1
  bool cond_iii = false;  ///< some first edge on a t1-earliest path is not cross-tier under t2
  bool cond_iv = false;   ///< t1 has more fully shielded cross-tier edges
  bool sufficient_conditions_hold() const { return cond_i && cond_ii && (cond_iii || cond_iv); }
};

/// Compares the two tiered MPDAGs by containment.
inline InformativenessResult tiers_more_informative(const Pdag& c, const TieredOrdering& t1,
                                                    const TieredOrdering& t2,
                                                    std::size_t node_limit = kDefaultPathNodeLimit) {
  const Pdag g1 = tiered_mpdag(c, t1).graph;
  const Pdag g2 = tiered_mpdag(c, t2).graph;
  InformativenessResult out;
  for (const Edge& e : g1.edges()) {
    if (e.directed && !g2.directed(e.from, e.to)) out.only_first.push_back(e);
  }
  for (const Edge& e : g2.edges()) {
    if (e.directed && !g1.directed(e.from, e.to)) out.only_second.push_back(e);
  }
  const bool in12 = contained_in(g1, g2);
  const bool in21 = contained_in(g2, g1);
  out.verdict = in12 && in21 ? Informativeness::kEquivalent
                : in12       ? Informativeness::kMoreInformative
                : in21       ? Informativeness::kLessInformative
                             : Informativeness::kIncomparable;

  const Pdag cu = undirected_subgraph(c);
  if (cu.size() <= node_limit) {
    const UnshieldedPaths paths(cu, node_limit);
    const auto early1 = paths.earliest(t1);
    const auto early2 = paths.earliest(t2);
    auto crosses = [](const TieredOrdering& t, const Edge& e) { return t.before(e.from, e.to); };
    out.cond_i = true;
    for (std::size_t i = 0; i < paths.paths().size(); ++i) {
      if (early2[i]) {
        for (const Edge& e : first_cross_tier_edges(paths.paths()[i], t2)) {
          out.cond_i = out.cond_i && crosses(t1, e);
        }
      }
      if (early1[i]) {
        for (const Edge& e : first_cross_tier_edges(paths.paths()[i], t1)) {
          out.cond_iii = out.cond_iii || !crosses(t2, e);
        }
      }
    }
    const auto s1 = detail::fully_shielded_cross_tier(cu, t1);
    const auto s2 = detail::fully_shielded_cross_tier(cu, t2);
    out.cond_ii = std::all_of(s2.begin(), s2.end(), [&](const Edge& e) { return crosses(t1, e); });
    out.cond_iv = s1.size() > s2.size();
  }
  return out;
}

}  // namespace tiered
