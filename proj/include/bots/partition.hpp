#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bots/error.hpp"
#include "bots/graph.hpp"

namespace bots {

/// Ordered layering of the nodes from a source: sigma_1 = {source}, and every
/// node of sigma_i (i > 1) has an in-arc from sigma_(i-1). Regions are numbered
/// from 1; members are ascending.
class RegionPartition {
 public:
  NodeId source() const { return source_; }
  std::size_t region_count() const { return regions_.size(); }

  /// Members of region i (1-based).
  const std::vector<NodeId>& region(std::size_t i) const {
    if (i < 1 || i > regions_.size()) {
      throw InvalidArgument("region " + std::to_string(i) + " out of range 1.." +
                            std::to_string(regions_.size()));
    }
    return regions_[i - 1];
  }
  const std::vector<std::vector<NodeId>>& regions() const { return regions_; }

  bool contains(NodeId v) const {
    return v.value >= 1 && v.value <= index_.size() && index_[v.index()] != 0;
  }

  /// 1-based region number of v.
  std::size_t region_of(NodeId v) const {
    if (!contains(v)) throw UnknownNode("node " + to_string(v) + " is not in the partition");
    return index_[v.index()];
  }

  std::vector<std::size_t> region_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(regions_.size());
    for (const auto& r : regions_) sizes.push_back(r.size());
    return sizes;
  }

  friend RegionPartition partition_reachable(const Graph& g, NodeId source);

 private:
  NodeId source_;
  std::vector<std::vector<NodeId>> regions_;
  std::vector<std::size_t> index_;
};

/// Layers the nodes reachable from `source` by directed hop distance; the
/// rest are left out of the partition.
inline RegionPartition partition_reachable(const Graph& g, NodeId source) {
  if (!g.contains(source)) throw UnknownNode("unknown source " + to_string(source));
  RegionPartition p;
  p.source_ = source;
  p.index_.assign(g.node_count(), 0);
  p.index_[source.index()] = 1;
  std::vector<NodeId> layer{source};
  while (!layer.empty()) {
    p.regions_.push_back(layer);
    std::vector<NodeId> next;
    const std::size_t number = p.regions_.size() + 1;
    for (NodeId u : layer) {
      for (NodeId v : g.out(u)) {
        if (p.index_[v.index()] == 0) {
          p.index_[v.index()] = number;
          next.push_back(v);
        }
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return p;
}

/// Layers every node by directed hop distance from `source`. Throws
/// Unreachable naming the nodes a directed walk from the source never meets.
inline RegionPartition partition(const Graph& g, NodeId source) {
  RegionPartition p = partition_reachable(g, source);
  std::string missing;
  std::size_t listed = 0;
  for (std::uint32_t v = 1; v <= g.node_count(); ++v) {
    if (p.contains(NodeId{v})) continue;
    if (listed++ < 20) missing += " " + std::to_string(v);
  }
  if (listed == 0) return p;
  if (listed > 20) missing += " ...";
  throw Unreachable("nodes unreachable from " + to_string(source) + ":" + missing);
}

/// Minimum number of traversal relations from the source to `target`.
inline std::size_t shortest_length(const RegionPartition& p, NodeId target) {
  return p.region_of(target) - 1;
}

/// Interior regions i with |sigma_(i-1)| >= |sigma_i| <= |sigma_(i+1)| and at
/// least one of the two inequalities strict, ascending.
inline std::vector<std::size_t> find_bridge_regions(const RegionPartition& p) {
  const auto sizes = p.region_sizes();
  std::vector<std::size_t> bridges;
  for (std::size_t i = 2; i + 1 <= sizes.size(); ++i) {
    const std::size_t before = sizes[i - 2], here = sizes[i - 1], after = sizes[i];
    if (before >= here && here <= after && (before > here || here < after)) bridges.push_back(i);
  }
  return bridges;
}

/// Picks one border per run of adjacent bridge regions: the smallest region,
/// ties going to the later one. Regions at or beyond `before_region` are
/// ignored when it is given.
inline std::vector<std::size_t> choose_borders(const RegionPartition& p,
                                               std::optional<std::size_t> before_region = {}) {
  auto bridges = find_bridge_regions(p);
  if (before_region) {
    std::erase_if(bridges, [&](std::size_t i) { return i >= *before_region; });
  }
  std::vector<std::size_t> borders;
  for (std::size_t a = 0; a < bridges.size();) {
    std::size_t b = a + 1;
    while (b < bridges.size() && bridges[b] == bridges[b - 1] + 1) ++b;
    std::size_t pick = bridges[a];
    for (std::size_t j = a + 1; j < b; ++j) {
      if (p.region(bridges[j]).size() <= p.region(pick).size()) pick = bridges[j];
    }
    borders.push_back(pick);
    a = b;
  }
  return borders;
}

/// Closed region interval [first, last].
struct RegionInterval {
  std::size_t first = 0;
  std::size_t last = 0;

  friend constexpr bool operator==(const RegionInterval&, const RegionInterval&) = default;
};

/// Blocks M_1..M_N; consecutive blocks share exactly their border region.
struct BlockSequence {
  std::vector<RegionInterval> blocks;
  std::vector<std::size_t> borders;

  std::size_t depth() const { return blocks.size(); }
};

/// Splits the regions at the given bridge regions. Borders must be strictly
/// increasing, not adjacent, interior, and bridge regions of `p`.
inline BlockSequence decompose_blocks(const RegionPartition& p,
                                      const std::vector<std::size_t>& chosen_borders) {
  const std::size_t r = p.region_count();
  const auto bridges = find_bridge_regions(p);
  for (std::size_t j = 0; j < chosen_borders.size(); ++j) {
    const std::size_t b = chosen_borders[j];
    if (b <= 1 || b >= r) {
      throw InvalidArgument("border " + std::to_string(b) + " must lie strictly inside 1.." +
                            std::to_string(r));
    }
    if (j > 0 && b <= chosen_borders[j - 1]) {
      throw InvalidArgument("border indices must be strictly increasing");
    }
    if (j > 0 && b == chosen_borders[j - 1] + 1) {
      throw InvalidArgument("borders " + std::to_string(b - 1) + " and " + std::to_string(b) +
                            " are adjacent");
    }
    if (!std::binary_search(bridges.begin(), bridges.end(), b)) {
      throw InvalidArgument("region " + std::to_string(b) + " is not a bridge region");
    }
  }
  BlockSequence seq;
  seq.borders = chosen_borders;
  std::size_t start = 1;
  for (std::size_t b : chosen_borders) {
    seq.blocks.push_back({start, b});
    start = b;
  }
  seq.blocks.push_back({start, r});
  return seq;
}

}  // namespace bots
