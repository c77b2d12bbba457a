#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bots/delay.hpp"
#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/partition.hpp"
#include "bots/search.hpp"

namespace bots {

namespace detail {

// Strictly better: earlier arrival, then lexicographically smaller path.
inline bool better(Seconds arrival, const std::vector<NodeId>& nodes, const RouteTiming& best) {
  if (arrival != best.arrival()) return arrival < best.arrival();
  return nodes < best.path.nodes;
}

}  // namespace detail

/// Minimum-total shortest path from the partition's source to `target`,
/// departing at `depart`. Blocked candidates are skipped; ties go to the
/// lexicographically smaller path. `evaluations`, when given, receives the
/// number of candidates evaluated.
inline RouteTiming top_path_exhaustive(const Graph& g, const RegionPartition& p, const DelayProfile& prof,
                                       NodeId target, Seconds depart, const SearchOptions& opt = {},
                                       std::uint64_t* evaluations = nullptr) {
  const auto found = enumerate_shortest_paths(g, p, target, opt);
  std::optional<RouteTiming> best;
  std::vector<Seconds> marks;
  for (const Path& path : found.paths) {
    if (detail::accumulate(prof, path.nodes, depart, marks)) continue;
    const Seconds arrival = marks.empty() ? depart : marks.back();
    if (!best || detail::better(arrival, path.nodes, *best)) {
      best = RouteTiming{path, depart, marks, arrival - depart};
    }
  }
  if (evaluations) *evaluations = found.paths.size();
  if (!best) {
    throw NoRoute("every shortest path to " + to_string(target) + " is blocked at t=" + format_seconds(depart));
  }
  return *best;
}

struct StagedRoute {
  RouteTiming timing;
  std::vector<std::uint64_t> stage_evaluations;  // sub-paths evaluated per block

  std::uint64_t total_evaluations() const {
    std::uint64_t s = 0;
    for (auto e : stage_evaluations) s += e;
    return s;
  }
};

/// Block-by-block search. Each stage extends the best arrival at every
/// current bridge node over all in-block sub-paths to the next border and
/// keeps one best (arrival, path) per reached bridge node; the last stage
/// runs to `target`. An arc is charged in the block holding its head node,
/// so each arc is evaluated exactly once.
inline StagedRoute top_path_staged(const Graph& g, const RegionPartition& p, const BlockSequence& blocks,
                                   const DelayProfile& prof, NodeId target, Seconds depart,
                                   const SearchOptions& opt = {}) {
  if (!p.contains(target)) throw Unreachable("target " + to_string(target) + " is unreachable");
  const std::size_t target_region = p.region_of(target);
  if (!blocks.borders.empty() && target_region <= blocks.borders.back()) {
    throw InvalidArgument("target " + to_string(target) + " lies before the last border");
  }

  std::map<NodeId, RouteTiming> frontier;
  frontier.emplace(p.source(), RouteTiming{Path{{p.source()}}, depart, {}, 0});

  StagedRoute out;
  std::vector<Seconds> marks;
  const std::size_t stages = blocks.borders.size() + 1;
  for (std::size_t s = 0; s < stages; ++s) {
    const bool last = s + 1 == stages;
    const std::size_t goal_region = last ? target_region : blocks.borders[s];
    std::map<NodeId, RouteTiming> next;
    std::uint64_t evaluated = 0;
    for (const auto& [start, reached] : frontier) {
      for (const Path& leg : enumerate_region_paths(g, p, start, goal_region, opt)) {
        if (last && leg.back() != target) continue;
        ++evaluated;
        if (detail::accumulate(prof, leg.nodes, reached.arrival(), marks)) continue;
        const Seconds arrival = marks.empty() ? reached.arrival() : marks.back();
        std::vector<NodeId> nodes = reached.path.nodes;
        nodes.insert(nodes.end(), leg.nodes.begin() + 1, leg.nodes.end());
        auto it = next.find(leg.back());
        if (it != next.end() && !detail::better(arrival, nodes, it->second)) continue;
        RouteTiming t{Path{std::move(nodes)}, depart, reached.marks, arrival - depart};
        t.marks.insert(t.marks.end(), marks.begin(), marks.end());
        next.insert_or_assign(leg.back(), std::move(t));
      }
    }
    out.stage_evaluations.push_back(evaluated);
    if (next.empty()) {
      throw NoRoute(last ? "every route to " + to_string(target) + " is blocked"
                         : "no unblocked crossing of border region " + std::to_string(goal_region));
    }
    frontier = std::move(next);
  }
  out.timing = std::move(frontier.begin()->second);
  return out;
}

}  // namespace bots
