#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "tiered/graph.hpp"

namespace tiered {

/// Subset of Meek's orientation rules {1, 2, 3, 4}.
class RuleSet {
 public:
  constexpr RuleSet() = default;
  constexpr RuleSet(std::initializer_list<int> rules) {
    for (int r : rules) add(r);
  }
  static constexpr RuleSet all() { return {1, 2, 3, 4}; }
  static constexpr RuleSet cpdag() { return {1, 2, 3}; }

  constexpr void add(int rule) {
    if (rule < 1 || rule > 4) throw GraphError("Meek rule must be in 1..4");
    bits_ |= static_cast<unsigned>(1u << (rule - 1));
  }
  constexpr bool contains(int rule) const { return (bits_ >> (rule - 1)) & 1u; }
  friend constexpr bool operator==(RuleSet, RuleSet) = default;

 private:
  unsigned bits_ = 0;
};

/// One orientation performed during a closure: `rule` turned from - to into
/// from -> to.
struct FiredEdge {
  int rule = 0;
  NodeId from = 0;
  NodeId to = 0;
  friend bool operator==(const FiredEdge&, const FiredEdge&) = default;
};

/// Does `rule` orient the undirected edge a - b as a -> b in g? Patterns are
/// matched as induced subgraphs.
inline bool meek_rule_applies(const Pdag& g, int rule, NodeId a, NodeId b) {
  const std::size_t p = g.size();
  switch (rule) {
    case 1:
      // c -> a - b, c and b non-adjacent.
      for (NodeId c = 0; c < p; ++c) {
        if (g.directed(c, a) && !g.adjacent(c, b) && c != b) return true;
      }
      return false;
    case 2:
      // a -> c -> b, a - b.
      for (NodeId c = 0; c < p; ++c) {
        if (g.directed(a, c) && g.directed(c, b)) return true;
      }
      return false;
    case 3: {
      // a - c, a - d, c -> b, d -> b, c and d non-adjacent.
      std::vector<NodeId> cand;
      for (NodeId c = 0; c < p; ++c) {
        if (g.undirected(a, c) && g.directed(c, b)) cand.push_back(c);
      }
      for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
          if (!g.adjacent(cand[i], cand[j])) return true;
        }
      }
      return false;
    }
    case 4:
      // c -> d -> b, a - c, a - d, c and b non-adjacent.
      for (NodeId d = 0; d < p; ++d) {
        if (!g.directed(d, b) || !g.undirected(a, d)) continue;
        for (NodeId c = 0; c < p; ++c) {
          if (c != b && g.directed(c, d) && g.undirected(a, c) && !g.adjacent(c, b)) return true;
        }
      }
      return false;
    default:
      throw GraphError("Meek rule must be in 1..4");
  }
}

/// One sweep of a single rule over every undirected edge in canonical order.
/// All firings are collected against the input graph, then applied.
inline Pdag apply_meek_rule(const Pdag& g, int rule, std::vector<FiredEdge>* fired = nullptr) {
  std::vector<FiredEdge> found;
  for (const Edge& e : g.edges()) {
    if (e.directed) continue;
    if (meek_rule_applies(g, rule, e.from, e.to)) found.push_back({rule, e.from, e.to});
    if (meek_rule_applies(g, rule, e.to, e.from)) found.push_back({rule, e.to, e.from});
  }
  Pdag out = g;
  for (const FiredEdge& f : found) {
    // Two firings on the same edge in opposite directions can only happen on
    // inconsistent input; the first one wins and the caller's checks report.
    if (!out.undirected(f.from, f.to)) continue;
    out.orient(f.from, f.to);
    if (fired) fired->push_back(f);
  }
  return out;
}

/// Fixpoint of repeated sweeps over the given rules, in increasing rule order.
inline Pdag meek_closure(const Pdag& g, RuleSet rules, std::vector<FiredEdge>* trace = nullptr) {
  Pdag cur = g;
  for (bool changed = true; changed;) {
    changed = false;
    for (int r = 1; r <= 4; ++r) {
      if (!rules.contains(r)) continue;
      const std::size_t before = cur.num_undirected();
      cur = apply_meek_rule(cur, r, trace);
      changed = changed || cur.num_undirected() != before;
    }
  }
  return cur;
}

/// Closure that orients one edge at a time, scanning node pairs in the
/// caller's order and applying each firing immediately. Used to check that
/// the fixpoint does not depend on sweep order.
inline Pdag meek_closure_in_order(const Pdag& g, RuleSet rules, std::span<const Edge> order) {
  Pdag cur = g;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : order) {
      for (int r = 1; r <= 4; ++r) {
        if (!rules.contains(r) || !cur.undirected(e.from, e.to)) continue;
        if (meek_rule_applies(cur, r, e.from, e.to)) {
          cur.orient(e.from, e.to);
          changed = true;
        } else if (meek_rule_applies(cur, r, e.to, e.from)) {
          cur.orient(e.to, e.from);
          changed = true;
        }
      }
    }
  }
  return cur;
}

}  // namespace tiered
