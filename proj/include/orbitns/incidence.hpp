#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "orbitns/mode.hpp"
#include "orbitns/symmetry.hpp"

namespace orbitns {

/// Signed face (j, sigma) of the translated cube B(k); axis is 0-based.
struct Face {
  int axis = 0;
  int sign = 1;

  friend constexpr bool operator==(const Face&, const Face&) = default;
};

/// Tie-breaking order for the nearest face: (1,+), (1,-), (2,+), (2,-), (3,+), (3,-).
inline constexpr std::array<Face, 6> kFaces{{{0, 1}, {0, -1}, {1, 1}, {1, -1}, {2, 1}, {2, -1}}};

constexpr int face_rank(const Face& f) { return 2 * f.axis + (f.sign > 0 ? 0 : 1); }

/// A normalized face patch: nearest face and dyadic height scale.
struct PatchKey {
  Face face;
  int scale = 1;  // power of two

  friend constexpr auto operator<=>(const PatchKey& a, const PatchKey& b) {
    if (auto c = face_rank(a.face) <=> face_rank(b.face); c != 0) return c;
    return a.scale <=> b.scale;
  }
  friend constexpr bool operator==(const PatchKey&, const PatchKey&) = default;
};

using PatchMap = std::map<PatchKey, std::vector<Mode>>;

/// Ordered pairs (a, b) of integers with a^2 + b^2 = n. Throws DomainError for n < 0.
std::int64_t r2(std::int64_t n);

/// A_r(k): modes p with |p|^2 = r and both p, k - p retained. Lexicographic.
std::vector<Mode> shell_slice(const Mode& k, std::int64_t r, int n);

/// Inward distance from p to face f of B(k). Throws DomainError if p is not in B(k).
int face_height(const Mode& p, const Mode& k, const Face& f, int n);

struct NearestFace {
  Face face;
  int height = 0;
};

/// First face in kFaces order attaining the minimal height.
NearestFace min_face(const Mode& p, const Mode& k, int n);

/// 1 for h = 0, otherwise the power of two H with H <= h < 2H.
int dyadic_scale(int h);

/// Partition of A_r(k) into normalized face patches.
PatchMap patch_decompose(const Mode& k, std::int64_t r, int n);

/// Gamma_{alpha beta} = |alpha| * m_r(k, beta), with k the canonical
/// representative of alpha. Throws DomainError if either orbit is not
/// retained at truncation n.
std::int64_t gamma(const Orbit& alpha, const Orbit& beta, int n);

struct IncidenceRecord {
  std::size_t target = 0;          // orbit index in the table
  std::vector<std::int64_t> gamma;  // indexed by source orbit
  double row_sqrt_sum = 0.0;        // sum_beta sqrt(Gamma_{alpha beta}), in orbit order

  std::int64_t row_total() const;
};

/// Full incidence row of one target orbit. Counts are exact integers.
IncidenceRecord incidence_row(const OrbitTable& orbits, std::size_t alpha);

/// All rows; row computations run on up to `workers` threads.
std::vector<IncidenceRecord> incidence_matrix(const OrbitTable& orbits, int workers = 1);

struct IncidenceScanPoint {
  int n = 0;
  double max_row_sqrt_sum = 0.0;
};

/// max_alpha sum_beta sqrt(Gamma_{alpha beta}) for N = 1..n_max.
std::vector<IncidenceScanPoint> max_incidence_scan(int n_max, int workers = 1);

/// Least-squares slope of log(max_row_sqrt_sum) against log(N) over points with
/// N >= n_min. Throws InvalidParameter with fewer than two such points.
double loglog_slope(std::span<const IncidenceScanPoint> points, int n_min = 4);

}  // namespace orbitns
