#pragma once

#include <algorithm>

#include "orbitns/mode.hpp"

namespace orbitns::detail {

// Calls f(p) for every retained p with k - p retained, p lexicographic.
template <typename F>
void for_each_source(const Mode& k, int n, F&& f) {
  const int lo0 = std::max(-n, k[0] - n), hi0 = std::min(n, k[0] + n);
  const int lo1 = std::max(-n, k[1] - n), hi1 = std::min(n, k[1] + n);
  const int lo2 = std::max(-n, k[2] - n), hi2 = std::min(n, k[2] + n);
  for (int a = lo0; a <= hi0; ++a)
    for (int b = lo1; b <= hi1; ++b)
      for (int c = lo2; c <= hi2; ++c) {
        const Mode p{a, b, c};
        if (p.is_zero() || p == k) continue;
        f(p);
      }
}

}  // namespace orbitns::detail
