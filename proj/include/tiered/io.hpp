#pragma once

// Text formats.
//
// Graph:
//   # comment
//   nodes: A B C D
//   A -> B
//   B -- C
//
// Tiers (lower tier index = earlier):
//   tier 1: A B
//   tier 2: C D

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tiered/graph.hpp"
#include "tiered/ordering.hpp"

namespace tiered {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}
};

/// Input file missing or unreadable.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string strip(std::string_view s) {
  const auto hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  return in;
}

}  // namespace detail

/// Parses the graph text format. Rejects self-loops, repeated node pairs
/// and directed cycles.
inline Pdag read_graph(std::istream& in, const std::string& source = "<input>") {
  std::optional<Pdag> g;
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const std::string line = detail::strip(raw);
    if (line.empty()) continue;
    if (!g) {
      if (line.rfind("nodes:", 0) != 0) {
        throw ParseError(source, lineno, "expected 'nodes:' header");
      }
      try {
        g.emplace(detail::split_ws(line.substr(6)));
      } catch (const GraphError& e) {
        throw ParseError(source, lineno, e.what());
      }
      continue;
    }
    const auto tok = detail::split_ws(line);
    if (tok.size() != 3 || (tok[1] != "->" && tok[1] != "--")) {
      throw ParseError(source, lineno, "expected 'A -> B' or 'A -- B', got '" + line + "'");
    }
    if (!g->contains(tok[0]) || !g->contains(tok[2])) {
      throw ParseError(source, lineno, "edge references undeclared node in '" + line + "'");
    }
    const NodeId a = g->index(tok[0]);
    const NodeId b = g->index(tok[2]);
    if (a == b) throw ParseError(source, lineno, "self-loop at " + tok[0]);
    if (g->adjacent(a, b)) {
      throw ParseError(source, lineno, "second edge between " + tok[0] + " and " + tok[2]);
    }
    if (tok[1] == "->") g->add_directed(a, b);
    else g->add_undirected(a, b);
  }
  if (!g) throw ParseError(source, lineno, "missing 'nodes:' header");
  if (has_directed_cycle(*g)) throw ParseError(source, lineno, "graph has a directed cycle");
  return std::move(*g);
}

inline Pdag read_graph_file(const std::string& path) {
  auto in = detail::open_input(path);
  return read_graph(in, path);
}

inline Pdag parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

/// Canonical rendering: header, then edges sorted by (min index, max index).
inline std::string write_graph(const Pdag& g) {
  std::string out = "nodes:";
  for (const auto& n : g.names()) out += " " + n;
  out += "\n";
  for (const Edge& e : g.edges()) out += format_edge(g, e) + "\n";
  return out;
}

inline TieredOrdering read_tiers(std::istream& in, const Pdag& g,
                                 const std::string& source = "<input>") {
  std::map<std::string, int> assignment;
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const std::string line = detail::strip(raw);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    const auto head = detail::split_ws(line.substr(0, colon));
    if (colon == std::string::npos || head.size() != 2 || head[0] != "tier") {
      throw ParseError(source, lineno, "expected 'tier <k>: nodes...'");
    }
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(head[1], &used);
      if (used != head[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(source, lineno, "tier index '" + head[1] + "' is not an integer");
    }
    for (const auto& n : detail::split_ws(line.substr(colon + 1))) {
      if (!g.contains(n)) throw ParseError(source, lineno, "unknown node '" + n + "'");
      if (!assignment.emplace(n, k).second) {
        throw ParseError(source, lineno, "node '" + n + "' assigned to more than one tier");
      }
    }
  }
  try {
    return TieredOrdering::from_labels(g, assignment);
  } catch (const std::exception& e) {
    throw ParseError(source, lineno, e.what());
  }
}

inline TieredOrdering read_tiers_file(const std::string& path, const Pdag& g) {
  auto in = detail::open_input(path);
  return read_tiers(in, g, path);
}

inline TieredOrdering parse_tiers(const std::string& text, const Pdag& g) {
  std::istringstream in(text);
  return read_tiers(in, g);
}

inline std::string write_tiers(const TieredOrdering& tau, const Pdag& g) {
  std::string out;
  for (int t = 1; t <= tau.num_tiers(); ++t) {
    out += "tier " + std::to_string(t) + ":";
    for (NodeId v = 0; v < g.size(); ++v) {
      if (tau.tier(v) == t) out += " " + g.name(v);
    }
    out += "\n";
  }
  return out;
}

}  // namespace tiered
