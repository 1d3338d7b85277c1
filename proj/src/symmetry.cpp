#include "orbitns/symmetry.hpp"

#include <algorithm>
#include <string>

#include "orbitns/error.hpp"
#include "orbitns/lattice.hpp"

namespace orbitns {

GroupElement GroupElement::compose(const GroupElement& first) const {
  // apply(first.apply(k))_i = signs[i] * first.signs[perm[i]] * k[first.perm[perm[i]]]
  GroupElement out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto inner = static_cast<std::size_t>(perm[i]);
    out.perm[i] = first.perm[inner];
    out.signs[i] = signs[i] * first.signs[inner];
  }
  return out;
}

const std::vector<GroupElement>& group_elements() {
  static const std::vector<GroupElement> elements = [] {
    std::vector<GroupElement> out;
    out.reserve(48);
    std::array<int, 3> perm{0, 1, 2};
    do {
      for (int mask = 0; mask < 8; ++mask) {
        GroupElement g;
        g.perm = perm;
        for (std::size_t i = 0; i < 3; ++i) g.signs[i] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(g);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return elements;
}

Mode canonical_rep(const Mode& k) {
  if (k.is_zero()) throw DomainError("canonical_rep: zero wavevector has no orbit");
  std::array<int, 3> a{std::abs(k[0]), std::abs(k[1]), std::abs(k[2])};
  std::sort(a.begin(), a.end(), std::greater<>());
  return {a[0], a[1], a[2]};
}

Orbit orbit_of(const Mode& k) {
  Orbit orbit;
  orbit.canonical = canonical_rep(k);
  orbit.members.reserve(48);
  for (const auto& g : group_elements()) orbit.members.push_back(g.apply(k));
  std::sort(orbit.members.begin(), orbit.members.end());
  orbit.members.erase(std::unique(orbit.members.begin(), orbit.members.end()),
                      orbit.members.end());
  return orbit;
}

std::vector<Orbit> enumerate_orbits(int n) {
  require_truncation(n);
  std::vector<Mode> canon;
  for (int a = 1; a <= n; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c <= b; ++c) canon.emplace_back(a, b, c);
  std::sort(canon.begin(), canon.end(), [](const Mode& x, const Mode& y) {
    if (x.norm2() != y.norm2()) return x.norm2() < y.norm2();
    return y < x;
  });
  std::vector<Orbit> orbits;
  orbits.reserve(canon.size());
  for (const auto& c : canon) orbits.push_back(orbit_of(c));
  return orbits;
}

OrbitTable::OrbitTable(int n) : n_(n), orbits_(enumerate_orbits(n)), by_mode_(lattice_size(n)) {
  for (std::size_t i = 0; i < orbits_.size(); ++i)
    for (const auto& k : orbits_[i].members) by_mode_[lattice_index(k, n_)] = i;
}

std::optional<std::size_t> OrbitTable::find(const Mode& canonical) const {
  if (!in_lattice(canonical, n_) || canonical_rep(canonical) != canonical) return std::nullopt;
  const std::size_t i = orbit_index(canonical);
  return i;
}

}  // namespace orbitns
