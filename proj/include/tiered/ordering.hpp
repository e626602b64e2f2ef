#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tiered/graph.hpp"

namespace tiered {

/// Ordered node pair (tail, head), read as the edge tail -> head.
using NodePair = std::pair<NodeId, NodeId>;

/// Required and forbidden directed edges.
struct BackgroundKnowledge {
  std::set<NodePair> required;
  std::set<NodePair> forbidden;

  bool empty() const { return required.empty() && forbidden.empty(); }
  friend bool operator==(const BackgroundKnowledge&, const BackgroundKnowledge&) = default;
};

/// Complete assignment of nodes to tiers 1..T. Tier labels are normalised on
/// construction: any strictly increasing relabelling gives the same object.
class TieredOrdering {
 public:
  TieredOrdering() = default;

  explicit TieredOrdering(std::vector<int> raw) : tiers_(std::move(raw)) {
    std::vector<int> labels = tiers_;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (int& t : tiers_) {
      t = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), t) - labels.begin()) + 1;
    }
    num_tiers_ = static_cast<int>(labels.size());
  }

  /// Every node of g in a single tier.
  static TieredOrdering single_tier(std::size_t p) { return TieredOrdering(std::vector<int>(p, 1)); }

  static TieredOrdering from_labels(const Pdag& g, const std::map<std::string, int>& labels) {
    std::vector<int> raw(g.size(), 0);
    for (NodeId v = 0; v < g.size(); ++v) {
      auto it = labels.find(g.name(v));
      if (it == labels.end()) throw GraphError("node '" + g.name(v) + "' has no tier");
      raw[v] = it->second;
    }
    for (const auto& [name, _] : labels) {
      if (!g.contains(name)) throw GraphError("tier assigned to unknown node '" + name + "'");
    }
    return TieredOrdering(std::move(raw));
  }

  std::size_t size() const { return tiers_.size(); }
  int num_tiers() const { return num_tiers_; }
  int tier(NodeId v) const { return tiers_.at(v); }
  const std::vector<int>& tiers() const { return tiers_; }

  bool before(NodeId a, NodeId b) const { return tier(a) < tier(b); }

  friend bool operator==(const TieredOrdering&, const TieredOrdering&) = default;

 private:
  std::vector<int> tiers_;
  int num_tiers_ = 0;
};

/// Forbidden edges implied by a tiered ordering: every B -> A with
/// tier(A) < tier(B). Required set is empty.
inline BackgroundKnowledge forbidden_set(const TieredOrdering& tau) {
  BackgroundKnowledge k;
  for (NodeId a = 0; a < tau.size(); ++a) {
    for (NodeId b = 0; b < tau.size(); ++b) {
      if (tau.before(a, b)) k.forbidden.emplace(b, a);
    }
  }
  return k;
}

}  // namespace tiered
