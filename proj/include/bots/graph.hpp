#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bots/error.hpp"

namespace bots {

/// 1-based node label. Labels of one instance are contiguous 1..n.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  constexpr std::size_t index() const { return value - 1; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline std::string to_string(NodeId id) { return std::to_string(id.value); }

/// Traversal relation: a tracer may move from `from` to `to`.
struct Arc {
  NodeId from;
  NodeId to;

  constexpr Arc() = default;
  constexpr Arc(NodeId f, NodeId t) : from(f), to(t) {}
  constexpr Arc(std::uint32_t f, std::uint32_t t) : from(f), to(t) {}

  constexpr Arc reversed() const { return Arc{to, from}; }

  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

inline std::string to_string(const Arc& a) {
  return "(" + to_string(a.from) + "," + to_string(a.to) + ")";
}

/// Planar position used for labeling grids and composites (column, row).
struct Coord {
  int col = 0;
  int row = 0;

  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

/// The relationship table: relation set plus forward (unit subgraph) and
/// reverse indices. Immutable once built.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return n_; }
  std::size_t arc_count() const { return relations_.size(); }

  /// Relations in ascending (from, to) order.
  std::span<const Arc> relations() const { return relations_; }

  bool contains(NodeId v) const { return v.value >= 1 && v.value <= n_; }

  bool has_arc(Arc a) const {
    return std::binary_search(relations_.begin(), relations_.end(), a);
  }

  /// Out-neighbours of v, ascending.
  std::span<const NodeId> out(NodeId v) const {
    check(v);
    return {fwd_targets_.data() + fwd_offsets_[v.index()],
            fwd_offsets_[v.index() + 1] - fwd_offsets_[v.index()]};
  }

  /// In-neighbours of v, ascending.
  std::span<const NodeId> in(NodeId v) const {
    check(v);
    return {rev_sources_.data() + rev_offsets_[v.index()],
            rev_offsets_[v.index() + 1] - rev_offsets_[v.index()]};
  }

  /// Every arc has its reverse twin.
  bool is_simple() const { return simple_; }

  const std::map<NodeId, Coord>& coords() const { return coords_; }
  std::optional<Coord> coord(NodeId v) const {
    auto it = coords_.find(v);
    if (it == coords_.end()) return std::nullopt;
    return it->second;
  }

  /// Returns a copy carrying the given coordinate labels.
  Graph with_coords(std::map<NodeId, Coord> coords) const {
    for (const auto& [v, c] : coords) {
      if (!contains(v)) throw UnknownNode("coordinate for unknown node " + to_string(v));
    }
    Graph g = *this;
    g.coords_ = std::move(coords);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.relations_ == b.relations_ && a.coords_ == b.coords_;
  }

  friend Graph build_graph(std::vector<Arc> relations, std::optional<std::size_t> node_count);

 private:
  void check(NodeId v) const {
    if (!contains(v)) throw UnknownNode("unknown node " + to_string(v));
  }

  std::size_t n_ = 0;
  std::vector<Arc> relations_;
  std::vector<std::size_t> fwd_offsets_;
  std::vector<NodeId> fwd_targets_;
  std::vector<std::size_t> rev_offsets_;
  std::vector<NodeId> rev_sources_;
  bool simple_ = true;
  std::map<NodeId, Coord> coords_;
};

/// Builds the relationship table. When `node_count` is absent n is the largest
/// label, and every label 1..n must occur in some arc.
///
/// Rejects self-loops, duplicate arcs, labels outside 1..n, unused labels and
/// node sets that are disconnected when direction is ignored.
inline Graph build_graph(std::vector<Arc> relations,
                         std::optional<std::size_t> node_count = std::nullopt) {
  if (relations.empty() && !node_count) {
    throw InvalidGraph("empty relation list");
  }
  std::uint32_t max_label = 0;
  for (const Arc& a : relations) {
    if (a.from.value == 0 || a.to.value == 0) throw InvalidGraph("node labels start at 1");
    if (a.from == a.to) throw InvalidGraph("self-loop at node " + to_string(a.from));
    max_label = std::max({max_label, a.from.value, a.to.value});
  }
  const std::size_t n = node_count.value_or(max_label);
  if (n == 0) throw InvalidGraph("graph has no nodes");
  if (max_label > n) {
    throw InvalidGraph("label " + std::to_string(max_label) + " exceeds node count " +
                       std::to_string(n));
  }

  std::sort(relations.begin(), relations.end());
  auto dup = std::adjacent_find(relations.begin(), relations.end());
  if (dup != relations.end()) throw InvalidGraph("duplicate arc " + to_string(*dup));

  Graph g;
  g.n_ = n;
  g.relations_ = std::move(relations);

  g.fwd_offsets_.assign(n + 1, 0);
  g.rev_offsets_.assign(n + 1, 0);
  for (const Arc& a : g.relations_) {
    ++g.fwd_offsets_[a.from.value];
    ++g.rev_offsets_[a.to.value];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.fwd_offsets_[i + 1] += g.fwd_offsets_[i];
    g.rev_offsets_[i + 1] += g.rev_offsets_[i];
  }
  g.fwd_targets_.resize(g.relations_.size());
  g.rev_sources_.resize(g.relations_.size());
  {
    std::vector<std::size_t> fpos(g.fwd_offsets_.begin(), g.fwd_offsets_.end() - 1);
    std::vector<std::size_t> rpos(g.rev_offsets_.begin(), g.rev_offsets_.end() - 1);
    // relations are sorted by (from, to): forward lists come out ascending.
    for (const Arc& a : g.relations_) g.fwd_targets_[fpos[a.from.index()]++] = a.to;
    // iterate by source so each reverse list is ascending as well.
    for (const Arc& a : g.relations_) g.rev_sources_[rpos[a.to.index()]++] = a.from;
  }

  std::vector<char> used(n, 0);
  for (const Arc& a : g.relations_) used[a.from.index()] = used[a.to.index()] = 1;
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i]) {
        throw InvalidGraph("node " + std::to_string(i + 1) + " has no relations");
      }
    }
  }

  // undirected connectivity from node 1
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{NodeId{1}};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    auto visit = [&](NodeId w) {
      if (!seen[w.index()]) {
        seen[w.index()] = 1;
        ++reached;
        stack.push_back(w);
      }
    };
    for (NodeId w : g.out(u)) visit(w);
    for (NodeId w : g.in(u)) visit(w);
  }
  if (reached != n) {
    std::string missing;
    for (std::size_t i = 0; i < n && missing.size() < 200; ++i) {
      if (!seen[i]) missing += (missing.empty() ? "" : " ") + std::to_string(i + 1);
    }
    throw InvalidGraph("disconnected node set: " + missing);
  }

  g.simple_ = std::all_of(g.relations_.begin(), g.relations_.end(),
                          [&](const Arc& a) { return g.has_arc(a.reversed()); });
  return g;
}

/// Star-shaped neighbourhood of one node: the root and its out-neighbours.
struct UnitSubgraph {
  NodeId root;
  std::vector<NodeId> leaves;
  std::size_t m = 0;
};

inline UnitSubgraph unit_subgraph(const Graph& g, NodeId node) {
  auto leaves = g.out(node);
  return UnitSubgraph{node, {leaves.begin(), leaves.end()}, leaves.size()};
}

/// New graph without `a`. Its reverse twin, if any, stays. Throws if the arc is
/// absent or if dropping it disconnects the node set.
inline Graph remove_arc(const Graph& g, Arc a) {
  if (!g.has_arc(a)) throw InvalidArgument("arc " + to_string(a) + " is not present");
  std::vector<Arc> rest;
  rest.reserve(g.arc_count() - 1);
  for (const Arc& r : g.relations()) {
    if (r != a) rest.push_back(r);
  }
  return build_graph(std::move(rest), g.node_count()).with_coords(g.coords());
}

}  // namespace bots
