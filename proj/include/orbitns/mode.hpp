#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>

namespace orbitns {

/// Integer wavevector k = (k1, k2, k3). Ordering is lexicographic.
struct Mode {
  std::array<int, 3> c{};

  constexpr Mode() = default;
  constexpr Mode(int k1, int k2, int k3) : c{k1, k2, k3} {}

  constexpr int operator[](std::size_t i) const { return c[i]; }
  constexpr int& operator[](std::size_t i) { return c[i]; }

  constexpr bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
  constexpr std::int64_t norm2() const {
    return std::int64_t{c[0]} * c[0] + std::int64_t{c[1]} * c[1] +
           std::int64_t{c[2]} * c[2];
  }
  constexpr int max_norm() const {
    return std::max({c[0] < 0 ? -c[0] : c[0], c[1] < 0 ? -c[1] : c[1],
                     c[2] < 0 ? -c[2] : c[2]});
  }

  constexpr Mode operator-() const { return {-c[0], -c[1], -c[2]}; }
  friend constexpr Mode operator+(const Mode& a, const Mode& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  }
  friend constexpr Mode operator-(const Mode& a, const Mode& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  }
  friend constexpr auto operator<=>(const Mode&, const Mode&) = default;
  friend constexpr bool operator==(const Mode&, const Mode&) = default;
};

/// "k1,k2,k3", the label format used in CSV output and on the command line.
inline std::string to_label(const Mode& k) {
  return std::to_string(k[0]) + "," + std::to_string(k[1]) + "," +
         std::to_string(k[2]);
}

inline std::ostream& operator<<(std::ostream& os, const Mode& k) {
  return os << '(' << k[0] << ", " << k[1] << ", " << k[2] << ')';
}

/// True iff k is a retained mode: nonzero with max |k_i| <= N.
constexpr bool in_lattice(const Mode& k, int n) {
  return !k.is_zero() && k.max_norm() <= n;
}

/// True iff p lies in the translated box B(k) = prod_j [k_j - N, k_j + N].
constexpr bool in_box(const Mode& p, const Mode& k, int n) {
  for (std::size_t j = 0; j < 3; ++j) {
    const int d = p[j] - k[j];
    if (d < -n || d > n) return false;
  }
  return true;
}

/// (2N+1)^3 - 1.
constexpr std::size_t lattice_size(int n) {
  const auto side = static_cast<std::size_t>(2 * n + 1);
  return side * side * side - 1;
}

/// Position of k in the lexicographic enumeration of the lattice. Requires
/// in_lattice(k, n).
constexpr std::size_t lattice_index(const Mode& k, int n) {
  const auto side = static_cast<std::size_t>(2 * n + 1);
  const std::size_t box = (static_cast<std::size_t>(k[0] + n) * side +
                           static_cast<std::size_t>(k[1] + n)) *
                              side +
                          static_cast<std::size_t>(k[2] + n);
  const std::size_t centre = lattice_size(n) / 2;
  return box > centre ? box - 1 : box;
}

/// Inverse of lattice_index.
constexpr Mode lattice_mode(std::size_t index, int n) {
  const auto side = static_cast<std::size_t>(2 * n + 1);
  const std::size_t centre = lattice_size(n) / 2;
  const std::size_t box = index >= centre ? index + 1 : index;
  return {static_cast<int>(box / (side * side)) - n,
          static_cast<int>((box / side) % side) - n,
          static_cast<int>(box % side) - n};
}

}  // namespace orbitns
