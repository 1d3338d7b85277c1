#include "orbitns/lattice.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "orbitns/error.hpp"

namespace orbitns {

void require_truncation(int n) {
  if (n < 1) throw InvalidParameter("truncation N must be >= 1, got " + std::to_string(n));
}

void require_in_lattice(const Mode& k, int n) {
  require_truncation(n);
  if (!in_lattice(k, n)) {
    throw DomainError("mode " + to_label(k) + " is not in the truncated lattice for N=" +
                      std::to_string(n));
  }
}

std::vector<Mode> enumerate_lattice(int n) {
  require_truncation(n);
  std::vector<Mode> modes;
  modes.reserve(lattice_size(n));
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b)
      for (int c = -n; c <= n; ++c)
        if (a != 0 || b != 0 || c != 0) modes.emplace_back(a, b, c);
  return modes;
}

std::int64_t triad_count_exact(const Mode& k, int n) {
  require_in_lattice(k, n);
  std::int64_t product = 1;
  for (std::size_t i = 0; i < 3; ++i) product *= 2 * std::int64_t{n} + 1 - std::abs(k[i]);
  return product - 2;
}

std::int64_t triad_count_brute(const Mode& k, int n) {
  require_in_lattice(k, n);
  std::array<int, 3> lo{}, hi{};
  for (std::size_t i = 0; i < 3; ++i) {
    lo[i] = std::max(-n, k[i] - n);
    hi[i] = std::min(n, k[i] + n);
  }
  std::int64_t count = 0;
  for (int a = lo[0]; a <= hi[0]; ++a)
    for (int b = lo[1]; b <= hi[1]; ++b)
      for (int c = lo[2]; c <= hi[2]; ++c) {
        const Mode p{a, b, c};
        if (in_lattice(p, n) && in_lattice(k - p, n)) ++count;
      }
  return count;
}

std::int64_t total_triads(int n) {
  require_truncation(n);
  const __int128 big = n;
  const __int128 centre = 3 * big * big + 3 * big + 1;
  const __int128 side = 2 * big + 1;
  const __int128 total = centre * centre * centre - 3 * side * side * side + 2;
  if (total > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("total_triads overflows 64 bits for N=" + std::to_string(n));
  }
  return static_cast<std::int64_t>(total);
}

std::int64_t max_triad_count(int n) {
  require_truncation(n);
  const std::int64_t side = 2 * std::int64_t{n} + 1;
  return 2 * std::int64_t{n} * side * side - 2;
}

std::vector<std::int64_t> shell_radii(int n) {
  require_truncation(n);
  // |k|^2 = a^2 + b^2 + c^2 with 0 <= c <= b <= a <= N covers every value.
  std::vector<bool> seen(3 * static_cast<std::size_t>(n) * n + 1, false);
  for (int a = 1; a <= n; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c <= b; ++c) seen[static_cast<std::size_t>(a * a + b * b + c * c)] = true;
  std::vector<std::int64_t> radii;
  for (std::size_t r = 1; r < seen.size(); ++r)
    if (seen[r]) radii.push_back(static_cast<std::int64_t>(r));
  return radii;
}

std::vector<Mode> shell(std::int64_t r, int n) {
  require_truncation(n);
  std::vector<Mode> out;
  if (r < 1 || r > 3 * std::int64_t{n} * n) return out;
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b)
      for (int c = -n; c <= n; ++c) {
        const Mode k{a, b, c};
        if (k.norm2() == r) out.push_back(k);
      }
  return out;
}

}  // namespace orbitns
