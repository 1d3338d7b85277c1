#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "orbitns/mode.hpp"

namespace orbitns {

/// Signed coordinate permutation: (g k)_i = signs[i] * k[perm[i]].
struct GroupElement {
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> signs{1, 1, 1};

  Mode apply(const Mode& k) const {
    return {signs[0] * k[static_cast<std::size_t>(perm[0])],
            signs[1] * k[static_cast<std::size_t>(perm[1])],
            signs[2] * k[static_cast<std::size_t>(perm[2])]};
  }

  /// The element acting as `this` after `first`: (*this).compose(first)
  /// maps k to apply(first.apply(k)).
  GroupElement compose(const GroupElement& first) const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// The 48 elements of the full octahedral group, identity first.
const std::vector<GroupElement>& group_elements();

/// (|k1|, |k2|, |k3|) sorted descending. Throws DomainError for k = 0.
Mode canonical_rep(const Mode& k);

struct Orbit {
  Mode canonical;
  std::vector<Mode> members;  // lexicographic

  std::size_t size() const { return members.size(); }
  std::int64_t norm2() const { return canonical.norm2(); }
  int max_norm() const { return canonical[0]; }
};

/// Distinct images of k under the group. Throws DomainError for k = 0.
Orbit orbit_of(const Mode& k);

/// One orbit per canonical triple a >= b >= c >= 0 with 1 <= a <= N, ordered by
/// |k|^2 ascending and then canonical triple descending.
std::vector<Orbit> enumerate_orbits(int n);

/// Orbit list for one truncation together with a mode -> orbit lookup.
class OrbitTable {
 public:
  explicit OrbitTable(int n);

  int truncation() const { return n_; }
  std::size_t size() const { return orbits_.size(); }
  const std::vector<Orbit>& orbits() const { return orbits_; }
  const Orbit& operator[](std::size_t i) const { return orbits_[i]; }

  /// Orbit index of a retained mode.
  std::size_t orbit_index(const Mode& k) const {
    return by_mode_[lattice_index(k, n_)];
  }
  std::size_t orbit_index_of_lattice(std::size_t lattice_idx) const {
    return by_mode_[lattice_idx];
  }

  /// Index of the orbit with this canonical triple, if it exists at this N.
  std::optional<std::size_t> find(const Mode& canonical) const;

 private:
  int n_;
  std::vector<Orbit> orbits_;
  std::vector<std::size_t> by_mode_;
};

}  // namespace orbitns
