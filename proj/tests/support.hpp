#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bots/bots.hpp"

namespace testing_support {

using namespace bots;

/// Random digraph on n nodes: a random out-tree from node 1 plus `extra`
/// arcs in random directions, so every node is reachable from 1.
inline Graph random_reachable_digraph(std::mt19937& rng, std::size_t n, std::size_t extra) {
  std::set<Arc> arcs;
  for (std::uint32_t v = 2; v <= n; ++v) {
    std::uniform_int_distribution<std::uint32_t> parent(1, v - 1);
    arcs.insert(Arc{NodeId{parent(rng)}, NodeId{v}});
  }
  std::uniform_int_distribution<std::uint32_t> any(1, static_cast<std::uint32_t>(n));
  for (std::size_t i = 0; i < extra && n > 1; ++i) {
    const std::uint32_t u = any(rng), v = any(rng);
    if (u != v) arcs.insert(Arc{NodeId{u}, NodeId{v}});
  }
  if (n == 1) return build_graph({}, 1);
  return build_graph({arcs.begin(), arcs.end()}, n);
}

/// Same, with every arc paired with its reverse.
inline Graph random_simple_graph(std::mt19937& rng, std::size_t n, std::size_t extra) {
  const Graph g = random_reachable_digraph(rng, n, extra);
  std::set<Arc> arcs;
  for (const Arc& a : g.relations()) {
    arcs.insert(a);
    arcs.insert(a.reversed());
  }
  return build_graph({arcs.begin(), arcs.end()}, n);
}

/// Hop distances by a plain queue walk; -1 when unreachable.
inline std::vector<long> bfs_distances(const Graph& g, NodeId s) {
  std::vector<long> d(g.node_count() + 1, -1);
  std::queue<std::uint32_t> q;
  d[s.value] = 0;
  q.push(s.value);
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (NodeId v : g.out(NodeId{u})) {
      if (d[v.value] < 0) {
        d[v.value] = d[u] + 1;
        q.push(v.value);
      }
    }
  }
  return d;
}

/// Minimum-hop paths s -> t by depth-first search over simple paths with
/// iterative deepening. Exponential; small graphs only.
inline std::vector<std::vector<std::uint32_t>> dfs_shortest_paths(const Graph& g, NodeId s, NodeId t) {
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> cur{s.value};
  std::vector<char> on(g.node_count() + 1, 0);
  on[s.value] = 1;
  std::function<void(std::size_t)> walk = [&](std::size_t budget) {
    if (cur.back() == t.value) {
      if (budget == 0) found.push_back(cur);
      return;
    }
    if (budget == 0) return;
    for (NodeId v : g.out(NodeId{cur.back()})) {
      if (on[v.value]) continue;
      on[v.value] = 1;
      cur.push_back(v.value);
      walk(budget - 1);
      cur.pop_back();
      on[v.value] = 0;
    }
  };
  for (std::size_t depth = 0; depth < g.node_count() && found.empty(); ++depth) walk(depth);
  return found;
}

/// Per-arc delays nondecreasing over `horizon_frames` frames, then constant
/// for the rest of the period, so the profile is FIFO on [0, horizon end].
inline DelayProfile random_fifo_profile(std::mt19937& rng, const Graph& g, Seconds frame_width = 60,
                                        std::size_t horizon_frames = 120) {
  DelayProfile prof(frame_width, 86400, Delay::of(30));
  std::uniform_real_distribution<double> base(1.0, 60.0);
  std::uniform_int_distribution<int> step(0, 9);
  for (const Arc& a : g.relations()) {
    double d = std::round(base(rng) * 4) / 4;
    std::vector<double> frames;
    for (std::size_t f = 0; f < horizon_frames; ++f) {
      const int s = step(rng);
      if (s >= 7) d += s - 6;  // occasional increase of 1..3 s
      frames.push_back(d);
    }
    prof.set_arc_delay(a, Delay::of(d));
    for (std::size_t f = 0; f < frames.size(); ++f) prof.set_entry(a, f, Delay::of(frames[f]));
  }
  return prof;
}

/// Two or three small lattices laid over each other at random overlapping
/// offsets, some transposed.
inline CompositeSpec random_small_composite(std::mt19937& rng) {
  std::uniform_int_distribution<int> blocks_d(2, 3), dim(2, 4), coin(0, 1);
  CompositeSpec spec;
  Coord origin{1, 1};
  std::size_t prev_w = 0, prev_h = 0;
  const int blocks = blocks_d(rng);
  for (int b = 0; b < blocks; ++b) {
    const std::size_t k = dim(rng), m = dim(rng);
    const bool transposed = b > 0 && coin(rng);
    const std::size_t w = transposed ? m : k, h = transposed ? k : m;
    if (b > 0) {
      std::uniform_int_distribution<int> dx(1, static_cast<int>(prev_w) - 1), dy(1, static_cast<int>(prev_h) - 1);
      origin = Coord{origin.col + (prev_w > 1 ? dx(rng) : 0), origin.row + (prev_h > 1 ? dy(rng) : 0)};
    }
    spec.blocks.push_back({detail::lattice(k, m), Placement{origin, transposed}});
    prev_w = w;
    prev_h = h;
  }
  identify_overlaps(spec);
  return spec;
}

/// Node of largest id in the last region.
inline NodeId far_node(const RegionPartition& p) { return p.region(p.region_count()).back(); }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("bots_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
