#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bots/count.hpp"
#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/partition.hpp"

namespace bots {

/// Simple path v_1..v_j; its length is the number of traversal relations.
struct Path {
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  NodeId front() const { return nodes.front(); }
  NodeId back() const { return nodes.back(); }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

inline std::string to_string(const Path& p) {
  std::string s;
  for (NodeId v : p.nodes) s += (s.empty() ? "" : " ") + to_string(v);
  return s;
}

struct SearchStats {
  std::size_t length = 0;          // L
  std::uint64_t loop_times = 0;    // L_T: prefixes materialized, the source prefix included
  std::uint64_t breadth = 0;       // B: complete shortest paths emitted
  std::uint64_t relaxed_probes = 0;
  double ratio = 0;                // L_T / B
};

struct SearchOptions {
  /// Also probe out-neighbours in the current region. Probes are counted in
  /// relaxed_probes and never extended.
  bool relax_same_region = false;
  /// Refuse once the prefix pool would exceed this many entries.
  std::uint64_t max_prefixes = 10'000'000;
};

namespace detail {

/// Prefix tree built level by level from one start node. Each entry is one
/// materialized prefix: its last node plus the index of the prefix it extends.
class PrefixPool {
 public:
  struct Entry {
    NodeId node;
    std::uint32_t parent;
  };
  static constexpr std::uint32_t kRoot = 0xffffffffu;

  PrefixPool(const Graph& g, const RegionPartition& p, NodeId start, std::size_t last_region,
             const SearchOptions& opt) {
    const std::size_t first_region = p.region_of(start);
    if (last_region < first_region) {
      throw InvalidArgument("last region precedes the start node's region");
    }
    entries_.push_back({start, kRoot});
    std::size_t begin = 0, end = 1;
    for (std::size_t region = first_region; region < last_region; ++region) {
      for (std::size_t i = begin; i < end; ++i) {
        const NodeId u = entries_[i].node;
        for (NodeId v : g.out(u)) {
          const std::size_t rv = p.region_of(v);
          if (rv == region + 1) {
            if (entries_.size() >= opt.max_prefixes) {
              throw BudgetExceeded("prefix pool exceeds " + std::to_string(opt.max_prefixes) +
                                   " entries");
            }
            entries_.push_back({v, static_cast<std::uint32_t>(i)});
          } else if (rv == region && opt.relax_same_region) {
            ++relaxed_probes_;
          }
        }
      }
      begin = end;
      end = entries_.size();
      if (begin == end) break;
    }
    last_begin_ = begin;
    last_end_ = end;
  }

  std::uint64_t size() const { return entries_.size(); }
  std::uint64_t relaxed_probes() const { return relaxed_probes_; }

  /// Indices of the prefixes that reached the last region, in lexicographic order.
  std::size_t last_begin() const { return last_begin_; }
  std::size_t last_end() const { return last_end_; }
  NodeId node(std::size_t i) const { return entries_[i].node; }

  Path path(std::size_t i) const {
    Path out;
    for (std::uint32_t at = static_cast<std::uint32_t>(i); at != kRoot; at = entries_[at].parent) {
      out.nodes.push_back(entries_[at].node);
    }
    std::reverse(out.nodes.begin(), out.nodes.end());
    return out;
  }

 private:
  std::vector<Entry> entries_;
  std::size_t last_begin_ = 0;
  std::size_t last_end_ = 0;
  std::uint64_t relaxed_probes_ = 0;
};

}  // namespace detail

struct ShortestPaths {
  std::vector<Path> paths;
  SearchStats stats;
};

/// All minimum-hop paths from the partition's source to `target`, in
/// lexicographic order. Prefixes are grown region by region, following only
/// out-neighbours in the next region; every node up to the target's region is
/// reached by at least one prefix, and L_T counts them all.
inline ShortestPaths enumerate_shortest_paths(const Graph& g, const RegionPartition& p,
                                              NodeId target, const SearchOptions& opt = {}) {
  if (!p.contains(target)) throw Unreachable("target " + to_string(target) + " is unreachable");
  const std::size_t last = p.region_of(target);
  detail::PrefixPool pool(g, p, p.source(), last, opt);
  ShortestPaths out;
  for (std::size_t i = pool.last_begin(); i < pool.last_end(); ++i) {
    if (pool.node(i) == target) out.paths.push_back(pool.path(i));
  }
  out.stats.length = last - 1;
  out.stats.loop_times = pool.size();
  out.stats.breadth = out.paths.size();
  out.stats.relaxed_probes = pool.relaxed_probes();
  out.stats.ratio = out.stats.breadth == 0
                        ? 0.0
                        : static_cast<double>(out.stats.loop_times) / static_cast<double>(out.stats.breadth);
  return out;
}

/// Region-monotone paths from `start` to any node of region `last_region`,
/// lexicographic. `loop_times`, when given, receives the pool size.
inline std::vector<Path> enumerate_region_paths(const Graph& g, const RegionPartition& p, NodeId start,
                                                std::size_t last_region, const SearchOptions& opt = {},
                                                std::uint64_t* loop_times = nullptr) {
  detail::PrefixPool pool(g, p, start, last_region, opt);
  std::vector<Path> out;
  out.reserve(pool.last_end() - pool.last_begin());
  for (std::size_t i = pool.last_begin(); i < pool.last_end(); ++i) out.push_back(pool.path(i));
  if (loop_times) *loop_times = pool.size();
  return out;
}

/// Every simple path from `source` to every other node, depth-first with
/// ascending neighbours. Refuses graphs larger than `node_budget`.
inline std::vector<Path> enumerate_all_simple_paths(const Graph& g, NodeId source,
                                                    std::size_t node_budget = 12) {
  if (!g.contains(source)) throw UnknownNode("unknown source " + to_string(source));
  if (g.node_count() > node_budget) {
    throw BudgetExceeded("graph has " + std::to_string(g.node_count()) +
                         " nodes, simple-path enumeration is capped at " + std::to_string(node_budget));
  }
  std::vector<Path> out;
  std::vector<char> on_path(g.node_count(), 0);
  Path cur{{source}};
  on_path[source.index()] = 1;
  std::function<void()> walk = [&] {
    for (NodeId v : g.out(cur.back())) {
      if (on_path[v.index()]) continue;
      on_path[v.index()] = 1;
      cur.nodes.push_back(v);
      out.push_back(cur);
      walk();
      cur.nodes.pop_back();
      on_path[v.index()] = 0;
    }
  };
  walk();
  return out;
}

/// Per-node number of shortest paths from the partition's source.
class CountTable {
 public:
  const Count& operator[](NodeId v) const { return labels_.at(v.index()); }
  std::size_t size() const { return labels_.size(); }

  Count total() const {
    Count t = 0;
    for (const Count& c : labels_) t += c;
    return t;
  }

  friend CountTable count_labels(const Graph& g, const RegionPartition& p);

 private:
  std::vector<Count> labels_;
};

/// label(source) = 1; label(v) sums the labels of v's in-neighbours one region
/// earlier.
inline CountTable count_labels(const Graph& g, const RegionPartition& p) {
  CountTable t;
  t.labels_.assign(g.node_count(), 0);
  t.labels_[p.source().index()] = 1;
  for (std::size_t i = 2; i <= p.region_count(); ++i) {
    for (NodeId v : p.region(i)) {
      Count sum = 0;
      for (NodeId u : g.in(v)) {
        if (p.region_of(u) + 1 == i) sum += t.labels_[u.index()];
      }
      t.labels_[v.index()] = std::move(sum);
    }
  }
  return t;
}

}  // namespace bots
