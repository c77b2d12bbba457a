#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "bots/error.hpp"
#include "bots/graph.hpp"

namespace bots {

/// k columns by m rows, numbered row-major from the bottom-left corner.
struct GridSpec {
  std::size_t k = 0;
  std::size_t m = 0;
};

/// Id of column `col`, row `row` (both 1-based) in a grid with k columns.
constexpr NodeId grid_node(std::size_t k, std::size_t col, std::size_t row) {
  return NodeId{static_cast<std::uint32_t>((row - 1) * k + col)};
}

namespace detail {

// Undirected lattice edges as arc pairs; no dimension ordering required.
inline std::vector<Arc> lattice_arcs(std::size_t k, std::size_t m) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * (m * (k - 1) + k * (m - 1)));
  for (std::size_t row = 1; row <= m; ++row) {
    for (std::size_t col = 1; col <= k; ++col) {
      const NodeId here = grid_node(k, col, row);
      if (col < k) {
        const NodeId right = grid_node(k, col + 1, row);
        arcs.emplace_back(here, right);
        arcs.emplace_back(right, here);
      }
      if (row < m) {
        const NodeId up = grid_node(k, col, row + 1);
        arcs.emplace_back(here, up);
        arcs.emplace_back(up, here);
      }
    }
  }
  return arcs;
}

inline Graph lattice(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw InvalidArgument("grid dimensions must be positive");
  std::map<NodeId, Coord> coords;
  for (std::size_t row = 1; row <= m; ++row) {
    for (std::size_t col = 1; col <= k; ++col) {
      coords[grid_node(k, col, row)] = Coord{static_cast<int>(col), static_cast<int>(row)};
    }
  }
  return build_graph(lattice_arcs(k, m), k * m).with_coords(std::move(coords));
}

}  // namespace detail

/// k x m lattice with every street as an arc pair; coordinates are attached.
inline Graph generate_grid(GridSpec spec) {
  if (spec.k == 0 || spec.m == 0) throw InvalidArgument("grid dimensions must be positive");
  if (spec.k < spec.m) throw InvalidArgument("grid requires k >= m");
  return detail::lattice(spec.k, spec.m);
}

}  // namespace bots
