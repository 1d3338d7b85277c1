#pragma once

#include <cstdint>
#include <vector>

#include "orbitns/mode.hpp"

namespace orbitns {

// Count arithmetic is signed 64-bit. The widest closed form, total_triads,
// is evaluated in 128-bit and stays representable up to N = kMaxTotalTriadsN;
// beyond that total_triads throws std::overflow_error.
inline constexpr int kMaxTotalTriadsN = 835;

/// Every k with 0 < max|k_i| <= N, in lexicographic order.
std::vector<Mode> enumerate_lattice(int n);

/// T(k, N) = prod_i (2N + 1 - |k_i|) - 2.
std::int64_t triad_count_exact(const Mode& k, int n);

/// Number of ordered pairs (p, q) in the lattice with p + q = k, by scanning p
/// over the box where both p and k - p can be retained.
std::int64_t triad_count_brute(const Mode& k, int n);

/// Sum of T(k, N) over the lattice: (3N^2 + 3N + 1)^3 - 3(2N + 1)^3 + 2.
std::int64_t total_triads(int n);

/// max_k T(k, N) = 2N(2N + 1)^2 - 2, attained at the six axial modes.
std::int64_t max_triad_count(int n);

/// Distinct values of |k|^2 over the lattice, ascending.
std::vector<std::int64_t> shell_radii(int n);

/// All retained modes with |k|^2 = r, lexicographic. Empty if r is not
/// represented.
std::vector<Mode> shell(std::int64_t r, int n);

/// Throws InvalidParameter unless n >= 1.
void require_truncation(int n);

/// Throws DomainError unless k is a retained mode at truncation n.
void require_in_lattice(const Mode& k, int n);

}  // namespace orbitns
