#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/grid.hpp"

namespace bots {

/// Where a block sits in the plane. A transposed block maps its local
/// (col, row) to (origin.col + row - 1, origin.row + col - 1).
struct Placement {
  Coord origin{1, 1};
  bool transposed = false;

  Coord map(Coord local) const {
    if (transposed) return {origin.col + local.row - 1, origin.row + local.col - 1};
    return {origin.col + local.col - 1, origin.row + local.row - 1};
  }
};

struct Block {
  Graph graph;
  std::optional<Placement> placement;
};

/// Node `node` of block number `block` (0-based).
struct BlockNode {
  std::size_t block = 0;
  NodeId node;
};

struct Splice {
  enum class Kind { identify, join };
  Kind kind = Kind::identify;
  BlockNode a;
  BlockNode b;
};

/// Recipe for a composite instance. Nodes are numbered in block order, then by
/// local id, skipping nodes already merged into an earlier one; `relabel` then
/// renames default ids.
struct CompositeSpec {
  std::vector<Block> blocks;
  std::vector<Splice> splices;
  std::map<NodeId, NodeId> relabel;
  std::optional<std::size_t> expected_nodes;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // keeps the smaller root so the earliest block owns a merged node
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Adds an identify splice for every pair of placed nodes that land on the same
/// plane position, merging each into the earliest block holding it.
inline void identify_overlaps(CompositeSpec& spec) {
  std::map<Coord, BlockNode> first_at;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const Block& blk = spec.blocks[b];
    if (!blk.placement) continue;
    for (const auto& [v, local] : blk.graph.coords()) {
      const Coord global = blk.placement->map(local);
      auto [it, fresh] = first_at.try_emplace(global, BlockNode{b, v});
      if (!fresh) spec.splices.push_back({Splice::Kind::identify, it->second, {b, v}});
    }
  }
}

inline Graph compose(const CompositeSpec& spec) {
  if (spec.blocks.empty()) throw InvalidArgument("composite has no blocks");
  std::vector<std::size_t> base(spec.blocks.size() + 1, 0);
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    base[b + 1] = base[b] + spec.blocks[b].graph.node_count();
  }
  auto flat = [&](const BlockNode& bn) {
    if (bn.block >= spec.blocks.size()) {
      throw InvalidArgument("splice references missing block " + std::to_string(bn.block + 1));
    }
    if (!spec.blocks[bn.block].graph.contains(bn.node)) {
      throw InvalidArgument("splice references missing node " + to_string(bn.node) +
                            " of block " + std::to_string(bn.block + 1));
    }
    return base[bn.block] + bn.node.index();
  };

  detail::DisjointSets sets(base.back());
  std::vector<std::pair<std::size_t, std::size_t>> joins;
  for (const Splice& s : spec.splices) {
    const std::size_t a = flat(s.a), b = flat(s.b);
    if (s.kind == Splice::Kind::identify) {
      sets.unite(a, b);
    } else {
      joins.emplace_back(a, b);
    }
  }

  std::vector<std::uint32_t> label(base.back(), 0);
  std::vector<std::uint32_t> class_label(base.back(), 0);
  std::uint32_t next = 0;
  for (std::size_t x = 0; x < base.back(); ++x) {
    const std::size_t root = sets.find(x);
    if (class_label[root] == 0) class_label[root] = ++next;
    label[x] = class_label[root];
  }
  const std::size_t n = next;

  std::vector<std::uint32_t> final_id(n + 1);
  std::iota(final_id.begin(), final_id.end(), 0);
  if (!spec.relabel.empty()) {
    for (const auto& [from, to] : spec.relabel) {
      if (from.value < 1 || from.value > n || to.value < 1 || to.value > n) {
        throw InvalidArgument("relabel " + to_string(from) + " -> " + to_string(to) +
                              " is outside 1.." + std::to_string(n));
      }
      final_id[from.value] = to.value;
    }
    std::vector<char> hit(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
      if (hit[final_id[i]]++) throw InvalidArgument("relabel map is not a permutation");
    }
  }
  auto node_of = [&](std::size_t x) { return NodeId{final_id[label[x]]}; };

  std::vector<Arc> arcs;
  std::map<NodeId, Coord> coords;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const Block& blk = spec.blocks[b];
    for (const Arc& a : blk.graph.relations()) {
      arcs.emplace_back(node_of(base[b] + a.from.index()), node_of(base[b] + a.to.index()));
    }
    if (blk.placement) {
      for (const auto& [v, local] : blk.graph.coords()) {
        coords.try_emplace(node_of(base[b] + v.index()), blk.placement->map(local));
      }
    }
  }
  for (auto [a, b] : joins) {
    arcs.emplace_back(node_of(a), node_of(b));
    arcs.emplace_back(node_of(b), node_of(a));
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  if (spec.expected_nodes && *spec.expected_nodes != n) {
    throw InvalidGraph("composite has " + std::to_string(n) + " nodes, expected " +
                       std::to_string(*spec.expected_nodes));
  }
  return build_graph(std::move(arcs), n).with_coords(std::move(coords));
}

/// k x k grids laid at the given placements, overlapping positions merged.
inline CompositeSpec overlay_grids(std::size_t k, const std::vector<Placement>& placements) {
  CompositeSpec spec;
  for (const Placement& p : placements) spec.blocks.push_back({detail::lattice(k, k), p});
  identify_overlaps(spec);
  return spec;
}

// Instances built from 5x5 grids. The first grid keeps ids 1..25; each later
// grid is transposed and numbers its new nodes in its own row-major order.

inline CompositeSpec fig3_left_spec() {
  auto spec = overlay_grids(5, {{{1, 1}, false}, {{4, 4}, true}});
  spec.expected_nodes = 46;
  return spec;
}

/// Depth-N chain: N grids, consecutive grids overlapping in a 3x2 or 2x3 patch. Depth 2
/// is the two-grid instance with 44 nodes, depth 3 the three-grid one with 63.
inline CompositeSpec chain_spec(std::size_t depth) {
  if (depth < 1) throw InvalidArgument("chain depth must be at least 1");
  std::vector<Placement> places{{{1, 1}, false}};
  if (depth >= 2) places.push_back({{3, 4}, true});
  // later grids zig-zag: +(3,2), +(2,3), +(3,2), ...
  while (places.size() < depth) {
    const Coord o = places.back().origin;
    const bool across = places.size() % 2 == 0;
    places.push_back({{o.col + (across ? 3 : 2), o.row + (across ? 2 : 3)}, true});
  }
  auto spec = overlay_grids(5, places);
  spec.expected_nodes = depth == 1 ? 25 : 6 + 19 * depth;
  return spec;
}

inline CompositeSpec fig3_right_spec() { return chain_spec(2); }
inline CompositeSpec fig4_spec() { return chain_spec(3); }

}  // namespace bots
