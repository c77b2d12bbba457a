#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "bots/count.hpp"
#include "bots/error.hpp"

namespace bots {

namespace detail {
inline void require_grid_dims(std::size_t k, std::size_t m) {
  if (m < 1 || k < m) throw InvalidArgument("requires k >= m >= 1");
}
}  // namespace detail

/// Number of corner-to-corner shortest paths of the k x m grid, C(k+m-2, m-1).
inline Count closed_form_breadth(std::size_t k, std::size_t m) {
  detail::require_grid_dims(k, m);
  return binomial(k + m - 2, m - 1);
}

/// Shortest paths from the corner to every node of the k x m grid, which is
/// the loop count of a corner-to-corner search: sum_{j=1..m} C(k+j-1, j).
inline Count closed_form_loop_times(std::size_t k, std::size_t m) {
  detail::require_grid_dims(k, m);
  Count total = 0;
  for (std::size_t j = 1; j <= m; ++j) total += binomial(k + j - 1, j);
  return total;
}

/// Stirling estimate of C(2k-2, k-1): 2^(2k-2) / sqrt(pi (k-1)).
inline double stirling_breadth_approx(std::size_t k) {
  if (k < 2) throw InvalidArgument("stirling approximation requires k >= 2");
  const double s = static_cast<double>(k - 1);
  return std::ldexp(1.0 / std::sqrt(std::numbers::pi * s), static_cast<int>(2 * k - 2));
}

struct SearchCostPrediction {
  std::size_t per_path_work = 0;  // 4 (k+m-2)^2, four leaves per unit subgraph
  Count breadth;                  // exact per-block breadth
  double breadth_bound = 0;       // 2^(2k-2) / sqrt(pi (k-1)); 1 when k == 1
  Count total_work;               // per_path_work * breadth * depth
};

/// Pure arithmetic cost model for a staged search over `depth` k x m blocks.
inline SearchCostPrediction predict_search_cost(std::size_t k, std::size_t m, std::size_t depth) {
  detail::require_grid_dims(k, m);
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
  SearchCostPrediction p;
  const std::size_t length = k + m - 2;
  p.per_path_work = 4 * length * length;
  p.breadth = closed_form_breadth(k, m);
  p.breadth_bound = k >= 2 ? stirling_breadth_approx(k) : 1.0;
  p.total_work = Count(p.per_path_work) * p.breadth * depth;
  return p;
}

}  // namespace bots
