#pragma once

#include <algorithm>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace bots {

/// Exact path counts; lattice breadths outgrow 64 bits quickly.
using Count = boost::multiprecision::cpp_int;

/// C(n, k), exact. Zero when k > n.
inline Count binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Count c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;  // exact: c holds C(n - k + i, i)
  }
  return c;
}

}  // namespace bots
