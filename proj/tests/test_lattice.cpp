#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "orbitns/error.hpp"
#include "orbitns/lattice.hpp"

using namespace orbitns;

TEST_CASE("lattice enumeration") {
  CHECK(enumerate_lattice(1).size() == 26);
  CHECK(enumerate_lattice(8).size() == 4912);

  const auto modes = enumerate_lattice(1);
  CHECK(std::find(modes.begin(), modes.end(), Mode{1, 0, 0}) != modes.end());
  CHECK(std::find(modes.begin(), modes.end(), Mode{0, 0, 0}) == modes.end());

  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_lattice(n);
    CHECK(all.size() == lattice_size(n));
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      REQUIRE(lattice_index(all[i], n) == i);
      REQUIRE(lattice_mode(i, n) == all[i]);
    }
  }

  CHECK_THROWS_AS(enumerate_lattice(0), InvalidParameter);
  CHECK_THROWS_AS(enumerate_lattice(-3), InvalidParameter);
}

TEST_CASE("triad counts") {
  CHECK(triad_count_exact({1, 0, 0}, 1) == 16);
  CHECK(triad_count_exact({1, 1, 1}, 1) == 6);
  CHECK(triad_count_exact({2, 0, 0}, 2) == 73);
  CHECK(triad_count_brute({1, 0, 0}, 1) == 16);
  CHECK(triad_count_brute({1, 1, 1}, 1) == 6);
  CHECK(triad_count_brute({2, 0, 0}, 2) == 73);

  // full-lattice scan oracle
  for (int n = 1; n <= 3; ++n)
    for (const auto& k : enumerate_lattice(n)) {
      REQUIRE(triad_count_exact(k, n) == oracle::triads(k, n));
      REQUIRE(triad_count_brute(k, n) == oracle::triads(k, n));
    }

  CHECK_THROWS_AS(triad_count_exact({0, 0, 0}, 2), DomainError);
  CHECK_THROWS_AS(triad_count_exact({3, 0, 0}, 2), DomainError);
  CHECK_THROWS_AS(triad_count_brute({0, 0, 3}, 2), DomainError);
}

TEST_CASE("closed-form totals and maxima") {
  CHECK(total_triads(1) == 264);
  CHECK(total_triads(3) == 49626);
  CHECK(total_triads(8) == 10203576);
  CHECK(max_triad_count(1) == 16);
  CHECK(max_triad_count(2) == 98);
  CHECK(max_triad_count(7) == 3148);

  for (int n = 1; n <= 8; ++n) {
    std::int64_t sum = 0, best = 0;
    std::vector<Mode> argmax;
    for (const auto& k : enumerate_lattice(n)) {
      const auto t = triad_count_exact(k, n);
      sum += t;
      if (t > best) {
        best = t;
        argmax.clear();
      }
      if (t == best) argmax.push_back(k);
    }
    CHECK(sum == total_triads(n));
    CHECK(best == max_triad_count(n));
    // the six axial modes
    CHECK(argmax == std::vector<Mode>{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  }

  CHECK_NOTHROW(total_triads(kMaxTotalTriadsN));
  CHECK_THROWS_AS(total_triads(kMaxTotalTriadsN + 1), std::overflow_error);
  CHECK_THROWS_AS(total_triads(0), InvalidParameter);
  CHECK_THROWS_AS(max_triad_count(0), InvalidParameter);
}

TEST_CASE("shells") {
  CHECK(shell_radii(1) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(shell_radii(3).size() == 18);
  CHECK(shell_radii(8).size() == 115);
  CHECK_THROWS_AS(shell_radii(0), InvalidParameter);

  CHECK(shell(1, 1) == std::vector<Mode>{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  const auto corners = shell(3, 1);
  CHECK(corners.size() == 8);
  for (const auto& k : corners) CHECK(k.max_norm() == 1);
  CHECK(shell(7, 2).empty());
  CHECK(shell(0, 2).empty());
  CHECK(shell(13, 2).empty());

  for (int n = 1; n <= 6; ++n) {
    std::size_t total = 0;
    const auto radii = shell_radii(n);
    CHECK(radii.size() <= std::size_t(3 * n * n));
    for (auto r : radii) {
      const auto s = shell(r, n);
      CHECK(!s.empty());
      total += s.size();
    }
    CHECK(total == lattice_size(n));
  }
}
