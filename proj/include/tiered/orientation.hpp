#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tiered/graph.hpp"
#include "tiered/independence.hpp"
#include "tiered/meek.hpp"
#include "tiered/ordering.hpp"

// Internal consistency checks on every tiered construction (rule-1 closure
// equals full closure, no partially directed cycle, chordal components).
// On by default in debug builds.
#ifndef TIERED_CHECKS
#ifdef NDEBUG
#define TIERED_CHECKS 0
#else
#define TIERED_CHECKS 1
#endif
#endif

namespace tiered {

/// Knowledge that contradicts the CPDAG or itself.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximally oriented PDAG plus where it came from.
struct Mpdag {
  Pdag graph;
  Pdag source;
  BackgroundKnowledge knowledge;
};

namespace detail {

inline std::string pair_str(const Pdag& g, const NodePair& e) {
  return g.name(e.first) + " -> " + g.name(e.second);
}

inline void check_knowledge(const Pdag& c, const BackgroundKnowledge& k) {
  auto check_pair = [&](const NodePair& e) {
    if (e.first >= c.size() || e.second >= c.size() || e.first == e.second) {
      throw InconsistencyError("background knowledge names an invalid node pair");
    }
  };
  for (const NodePair& e : k.required) {
    check_pair(e);
    if (k.forbidden.count(e)) {
      throw InconsistencyError("edge " + pair_str(c, e) + " is both required and forbidden");
    }
    if (k.required.count({e.second, e.first})) {
      throw InconsistencyError("edge " + pair_str(c, e) + " is required in both directions");
    }
    if (c.directed(e.second, e.first)) {
      throw InconsistencyError("required edge " + pair_str(c, e) + " contradicts the CPDAG");
    }
    if (!c.adjacent(e.first, e.second)) {
      throw InconsistencyError("required edge " + pair_str(c, e) + " is absent from the CPDAG");
    }
  }
  for (const NodePair& e : k.forbidden) {
    check_pair(e);
    if (c.directed(e.first, e.second)) {
      throw InconsistencyError("forbidden edge " + pair_str(c, e) + " is directed in the CPDAG");
    }
    if (c.adjacent(e.first, e.second) && k.forbidden.count({e.second, e.first})) {
      throw InconsistencyError("both directions of adjacent pair " + pair_str(c, e) +
                               " are forbidden");
    }
  }
}

}  // namespace detail

/// Orients undirected edges of the CPDAG as dictated by the knowledge.
/// Forbidden edges are checked before required ones; directed edges are left
/// alone.
inline Pdag impose_knowledge(const Pdag& c, const BackgroundKnowledge& k) {
  detail::check_knowledge(c, k);
  Pdag out = c;
  for (const Edge& e : c.edges()) {
    if (e.directed) continue;
    const NodeId i = e.from;
    const NodeId j = e.to;
    if (k.forbidden.count({i, j})) out.orient(j, i);
    else if (k.required.count({i, j})) out.orient(i, j);
    else if (k.forbidden.count({j, i})) out.orient(i, j);
    else if (k.required.count({j, i})) out.orient(j, i);
  }
  return out;
}

/// Verifies that orienting did not introduce v-structures or directed cycles
/// relative to the source CPDAG.
inline void require_same_class(const Pdag& source, const Pdag& oriented) {
  if (has_directed_cycle(oriented)) {
    throw InconsistencyError("background knowledge forces a directed cycle");
  }
  const auto before = v_structures(source);
  for (const VStructure& v : v_structures(oriented)) {
    if (!std::binary_search(before.begin(), before.end(), v)) {
      throw InconsistencyError("background knowledge forces the new v-structure " +
                               oriented.name(v.parent1) + " -> " + oriented.name(v.collider) +
                               " <- " + oriented.name(v.parent2));
    }
  }
}

/// Meek closure under rules 1-4 of the CPDAG with knowledge imposed.
inline Mpdag mpdag_of(const Pdag& c, const BackgroundKnowledge& k,
                      std::vector<FiredEdge>* trace = nullptr) {
  Pdag g = meek_closure(impose_knowledge(c, k), RuleSet::all(), trace);
  require_same_class(c, g);
  return {std::move(g), c, k};
}

/// Directed edges of the CPDAG pointing from a later tier into an earlier
/// one. Empty means the ordering does not contradict the CPDAG.
inline std::vector<Edge> check_consistency(const Pdag& c, const TieredOrdering& tau) {
  if (tau.size() != c.size()) throw GraphError("tiered ordering and graph differ in size");
  std::vector<Edge> violations;
  for (const Edge& e : c.edges()) {
    if (e.directed && tau.tier(e.from) > tau.tier(e.to)) violations.push_back(e);
  }
  return violations;
}

/// Tiered MPDAG: tier-forbidden edges imposed, then closed under Meek's
/// rule 1 only. `rules` exists for comparison runs; the result is the same
/// for any superset of {1}.
inline Mpdag tiered_mpdag(const Pdag& c, const TieredOrdering& tau,
                          std::vector<FiredEdge>* trace = nullptr, RuleSet rules = {1}) {
  if (const auto bad = check_consistency(c, tau); !bad.empty()) {
    std::string msg = "tiered ordering contradicts the CPDAG:";
    for (const Edge& e : bad) msg += " " + format_edge(c, e) + ";";
    msg.pop_back();
    throw InconsistencyError(msg);
  }
  BackgroundKnowledge k = forbidden_set(tau);
  Pdag g = meek_closure(impose_knowledge(c, k), rules, trace);
  require_same_class(c, g);
#if TIERED_CHECKS
  if (meek_closure(g, RuleSet::all()) != g) {
    throw std::logic_error("tiered MPDAG is not closed under Meek rules 2-4");
  }
  if (has_partially_directed_cycle(g)) {
    throw std::logic_error("tiered MPDAG has a partially directed cycle");
  }
  for (const NodeSet& comp : chain_components(g)) {
    if (comp.size() > 3 && !is_chordal(induced_subgraph(g, comp))) {
      throw std::logic_error("tiered MPDAG has a non-chordal chain component");
    }
  }
#endif
  return {std::move(g), c, std::move(k)};
}

/// Brute-force enumeration of the DAGs represented by g: every orientation
/// of g's undirected edges that is acyclic and has exactly g's v-structures.
inline std::vector<Pdag> enumerate_class(const Pdag& g, std::size_t max_undirected_edges = 12) {
  std::vector<Edge> free;
  for (const Edge& e : g.edges()) {
    if (!e.directed) free.push_back(e);
  }
  if (free.size() > max_undirected_edges) {
    throw GraphError("enumerate_class: " + std::to_string(free.size()) +
                     " undirected edges exceed the limit of " +
                     std::to_string(max_undirected_edges));
  }
  const auto target = v_structures(g);
  std::vector<Pdag> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    Pdag d = g;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if ((mask >> i) & 1u) d.orient(free[i].to, free[i].from);
      else d.orient(free[i].from, free[i].to);
    }
    if (!has_directed_cycle(d) && v_structures(d) == target) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace tiered
