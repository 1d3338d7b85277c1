#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orbitns/error.hpp"
#include "orbitns/lattice.hpp"
#include "orbitns/spectral.hpp"

using namespace orbitns;

namespace {

double max_abs(const SquareMatrix& m) {
  double out = 0.0;
  for (double x : m.data()) out = std::max(out, std::abs(x));
  return out;
}

double vec_diff(const Vec3c& a, const Vec3c& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < 3; ++j) d += std::norm(a[j] - b[j]);
  return std::sqrt(d);
}

TruncatedState scaled(const TruncatedState& u, double lambda) {
  TruncatedState out = u;
  for (auto& v : out.coeffs())
    for (auto& z : v) z *= lambda;
  return out;
}

// M_{alpha beta} straight from its definition: explicit 3x3 projector, orbit
// membership from the signed-permutation-matrix oracle, full lattice scan.
double transfer_oracle(const TruncatedState& u, const Mode& alpha_rep, const Mode& beta_rep) {
  const int n = u.truncation();
  const auto alpha = oracle::orbit(alpha_rep);
  const auto beta = oracle::orbit(beta_rep);
  double total = 0.0;
  for (const auto& k : alpha) {
    const double k2 = double(k.norm2());
    double proj[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) proj[i][j] = (i == j ? 1.0 : 0.0) - k[i] * k[j] / k2;
    for (const auto& p : oracle::lattice(n)) {
      const Mode q = k - p;
      if (!beta.count(p) || !oracle::retained(q, n)) continue;
      Complex pq = 0.0;
      for (int j = 0; j < 3; ++j) pq += u[p][j] * double(q[j]);
      for (int i = 0; i < 3; ++i) {
        Complex w = 0.0;
        for (int j = 0; j < 3; ++j) w += proj[i][j] * pq * u[q][j];
        total += k2 * (std::conj(u[k][i]) * Complex(0, -1) * w).real();
      }
    }
  }
  return total / double(alpha.size());
}

}  // namespace

TEST_CASE("leray projection") {
  const Mode k{1, 2, -2};
  const Vec3c parallel{Complex(1, 2), Complex(2, 4), Complex(-2, -4)};
  CHECK(norm(leray_project(k, parallel)) < 1e-15);

  const Vec3c orth{Complex(2, 1), Complex(-1, 0), Complex(0, 0.5)};  // k . v = 0
  CHECK(vec_diff(leray_project(k, orth), orth) == 0.0);

  const auto p = leray_project({1, 0, 0}, {Complex(1), Complex(1), Complex(0)});
  CHECK(vec_diff(p, {Complex(0), Complex(1), Complex(0)}) == 0.0);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const Mode kk{int(rng() % 7) - 3, int(rng() % 7) - 3, int(rng() % 7) + 1};
    Vec3c v{Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
    const auto once = leray_project(kk, v);
    const auto twice = leray_project(kk, once);
    REQUIRE(vec_diff(once, twice) <= 4e-16 * norm(once));
    REQUIRE(std::abs(dot(kk, once)) <= 1e-14 * norm(v) * std::sqrt(double(kk.norm2())));
  }
  CHECK_THROWS_AS(leray_project({0, 0, 0}, Vec3c{}), DomainError);
}

TEST_CASE("state validation") {
  auto u = random_state(2, 2.0, 1.0, 3);
  CHECK_NOTHROW(validate_state(u));

  auto broken = u;
  broken[{1, 0, 0}][1] += Complex(0.0, 1e-3);
  CHECK_THROWS_WITH_AS(validate_state(broken), doctest::Contains("reality"), ValidationError);

  auto compressible = u;
  compressible[{1, 0, 0}][0] += 0.5;
  compressible[{-1, 0, 0}][0] += 0.5;
  CHECK_THROWS_WITH_AS(validate_state(compressible), doctest::Contains("incompressibility violated at mode -1,0,0"),
                       ValidationError);

  auto nan = u;
  nan[{0, 2, 1}][2] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_WITH_AS(validate_state(nan), doctest::Contains("non-finite"), ValidationError);
}

TEST_CASE("random states") {
  const auto a = random_state(3, 2.5, 1.7, 42);
  const auto b = random_state(3, 2.5, 1.7, 42);
  const auto c = random_state(3, 2.5, 1.7, 43);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(h_s_norm(a, 2.5) == doctest::Approx(1.7).epsilon(1e-12));
  CHECK_NOTHROW(validate_state(a));
  // reality holds bit-for-bit
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.at_index(a.size() - 1 - i) == conj(a.at_index(i)));
  CHECK_THROWS_AS(random_state(2, 2.0, 0.0, 1), InvalidParameter);
  CHECK_THROWS_AS(random_state(2, 2.0, -1.0, 1), InvalidParameter);
}

TEST_CASE("Sobolev norm") {
  TruncatedState zero(2);
  CHECK(h_s_norm(zero, 2.0) == 0.0);

  TruncatedState pair(2);
  const Mode k{1, 2, 0};
  pair[k] = {Complex(0, 0), Complex(0, 0), Complex(0.3, 0.4)};
  pair[-k] = conj(pair[k]);
  const double s = 1.7;
  CHECK(h_s_norm(pair, s) == doctest::Approx(std::sqrt(2.0 * std::pow(5.0, s) * 0.25)).epsilon(1e-14));

  for (double ss : {1.6, 2.0, 2.5, 2.9}) {
    const auto u = random_state(4, ss, 2.0, 11);
    const double m = h_s_norm(u, ss);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double k2 = double(lattice_mode(i, 4).norm2());
      REQUIRE(norm(u.at_index(i)) <= m * std::pow(k2, -0.5 * ss) * (1 + 1e-12));
    }
  }
}

TEST_CASE("nonlinear term and right-hand side") {
  TruncatedState zero(2);
  CHECK(norm(nonlinear_term(zero, {1, 0, 0})) == 0.0);
  const auto rhs0 = galerkin_rhs(zero, 0.3);
  for (const auto& v : rhs0.coeffs()) CHECK(norm(v) == 0.0);
  CHECK_THROWS_AS(nonlinear_term(zero, {3, 0, 0}), DomainError);
  CHECK_THROWS_AS(galerkin_rhs(zero, -0.1), InvalidParameter);

  // single conjugate pair whose double is not retained: purely viscous
  TruncatedState pair(2);
  const Mode k{2, 1, 0};
  pair[k] = leray_project(k, {Complex(0.2, 0.1), Complex(-0.3, 0.7), Complex(0.5, -0.4)});
  pair[-k] = conj(pair[k]);
  const double nu = 0.37;
  const auto rhs = galerkin_rhs(pair, nu);
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const Mode m = lattice_mode(i, 2);
    const Vec3c& u = pair.at_index(i);
    const Vec3c expected{-nu * double(m.norm2()) * u[0], -nu * double(m.norm2()) * u[1],
                         -nu * double(m.norm2()) * u[2]};
    REQUIRE(rhs.at_index(i) == expected);
  }

  const auto u = random_state(3, 2.0, 1.0, 5);
  for (const Mode& m : {Mode{1, 0, 0}, Mode{2, -1, 3}, Mode{-3, -3, -3}}) {
    const auto base = nonlinear_term(u, m);
    for (double lambda : {2.0, 0.5, -1.0}) {
      const auto s = nonlinear_term(scaled(u, lambda), m);
      for (std::size_t j = 0; j < 3; ++j)
        REQUIRE(std::abs(s[j] - lambda * lambda * base[j]) <= 1e-13 * norm(base) * lambda * lambda);
    }
  }

  const auto r = galerkin_rhs(u, 0.1, 3);
  double energy_rate = 0.0, magnitude = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Mode m = lattice_mode(i, 3);
    REQUIRE(r.at_index(r.size() - 1 - i) == conj(r.at_index(i)));
    REQUIRE(std::abs(dot(m, r.at_index(i))) <= 1e-12 * std::sqrt(double(m.norm2())) * norm(r.at_index(i)) + 1e-300);
    const auto nl = nonlinear_term(u, m);
    for (std::size_t j = 0; j < 3; ++j) energy_rate += (std::conj(u.at_index(i)[j]) * nl[j]).real();
    magnitude += std::sqrt(double(m.norm2())) * std::pow(norm(u.at_index(i)), 3);
  }
  // inviscid Galerkin truncation conserves energy
  CHECK(std::abs(energy_rate) <= 1e-10 * magnitude);

  // bit-identical at any worker count
  CHECK(galerkin_rhs(u, 0.1, 1) == r);
}

TEST_CASE("nonlinear term matches (u . grad) u evaluated on a grid") {
  // direct evaluation on a (3N+1)^3 grid has no aliasing onto retained modes
  const int n = 2;
  const int m = 3 * n + 1;
  const auto u = random_state(n, 2.0, 2.0, 13);
  const auto modes = enumerate_lattice(n);
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<Vec3c> w(static_cast<std::size_t>(m * m * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        Vec3c vel{};
        Complex grad[3][3] = {};
        for (const auto& k : modes) {
          const Complex e = std::polar(1.0, two_pi * (k[0] * a + k[1] * b + k[2] * c) / m);
          for (int i = 0; i < 3; ++i) {
            vel[i] += u[k][i] * e;
            for (int j = 0; j < 3; ++j) grad[i][j] += Complex(0.0, k[j]) * u[k][i] * e;
          }
        }
        auto& out = w[static_cast<std::size_t>((a * m + b) * m + c)];
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) out[i] += vel[j] * grad[i][j];
      }

  double largest = 0.0;
  for (const auto& k : modes) {
    Vec3c wk{};
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          const Complex e = std::polar(1.0, -two_pi * (k[0] * a + k[1] * b + k[2] * c) / m);
          const auto& x = w[static_cast<std::size_t>((a * m + b) * m + c)];
          for (int i = 0; i < 3; ++i) wk[i] += x[i] * e / double(m * m * m);
        }
    const Vec3c expected = leray_project(k, wk);
    const Vec3c got = nonlinear_term(u, k);
    for (int i = 0; i < 3; ++i) REQUIRE(std::abs(got[i] + expected[i]) <= 1e-12);
    largest = std::max(largest, norm(got));
  }
  CHECK(largest > 1e-2);
}

TEST_CASE("transfer entries and matrix") {
  const int n = 2;
  const OrbitTable orbits(n);
  TruncatedState zero(n);
  CHECK(max_abs(transfer_matrix(zero, orbits).entries) == 0.0);
  CHECK(transfer_entry(zero, orbits[0], orbits[1]) == 0.0);

  const auto u = random_state(n, 2.0, 1.0, 9);
  const auto m = transfer_matrix(u, orbits, 1);
  REQUIRE(m.entries.dim() == orbits.size());
  REQUIRE(m.labels.size() == orbits.size());
  CHECK(m.entries.data().size() == orbits.size() * orbits.size());
  const double scale = max_abs(m.entries);
  CHECK(scale > 0.0);

  for (std::size_t a = 0; a < orbits.size(); ++a)
    for (std::size_t b = 0; b < orbits.size(); ++b) {
      const double entry = transfer_entry(u, orbits[a], orbits[b]);
      REQUIRE(std::abs(entry - m.entries(a, b)) <= 1e-13 * scale);
      REQUIRE(std::abs(transfer_oracle(u, orbits[a].canonical, orbits[b].canonical) - entry) <=
              1e-13 * scale);
    }

  // Gamma = 0 pair at N = 1: corner to corner
  const OrbitTable t1(1);
  const auto u1 = random_state(1, 2.0, 1.0, 2);
  CHECK(transfer_entry(u1, t1[2], t1[2]) == 0.0);
  CHECK(transfer_matrix(u1, t1).entries(2, 2) == 0.0);

  for (double lambda : {2.0, 0.5, -1.0}) {
    const auto ms = transfer_matrix(scaled(u, lambda), orbits);
    const double l3 = lambda * lambda * lambda;
    for (std::size_t i = 0; i < m.entries.data().size(); ++i)
      REQUIRE(std::abs(ms.entries.data()[i] - l3 * m.entries.data()[i]) <= 1e-13 * std::abs(l3) * scale);
  }

  CHECK(transfer_matrix(u, orbits, 4).entries == m.entries);
  CHECK_THROWS_AS(transfer_entry(u, orbit_of({3, 0, 0}), orbits[0]), DomainError);
  CHECK_THROWS_AS(transfer_matrix(u, OrbitTable(3)), DomainError);
}

TEST_CASE("antisymmetric and symmetric parts") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1, 1);
  SquareMatrix sym(5), anti(5), any(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double x = dist(rng), y = dist(rng);
      sym(i, j) = sym(j, i) = x;
      anti(i, j) = i == j ? 0.0 : y;
      anti(j, i) = -anti(i, j);
    }
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) any(i, j) = dist(rng);

  CHECK(max_abs(decompose(sym).antisymmetric) == 0.0);
  CHECK(max_abs(decompose(anti).symmetric) == 0.0);
  const auto d = decompose(any);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(d.antisymmetric(i, j) == -d.antisymmetric(j, i));
      CHECK(d.symmetric(i, j) == d.symmetric(j, i));
      CHECK(std::abs(d.antisymmetric(i, j) + d.symmetric(i, j) - any(i, j)) <= 1e-15 * max_abs(any));
    }
}

TEST_CASE("convolution sum") {
  CHECK(sigma_sum({1, 1, 1}, 2.0, 1) == doctest::Approx(1.5 * (1 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(sigma_sum({1, 1, 1}, 2.0, 1) == doctest::Approx(3.6213203435596424).epsilon(1e-14));
  CHECK_THROWS_AS(sigma_sum({2, 0, 0}, 2.0, 1), DomainError);

  for (int n = 1; n <= 3; ++n) {
    const OrbitTable orbits(n);
    for (double s : {1.6, 2.5}) {
      const auto by_orbit = sigma_by_orbit(orbits, s, 2);
      for (std::size_t a = 0; a < orbits.size(); ++a) {
        const double expected = oracle::sigma(orbits[a].canonical, s, n);
        REQUIRE(by_orbit[a] == doctest::Approx(expected).epsilon(1e-13));
        for (const auto& k : orbits[a].members)
          REQUIRE(sigma_sum(k, s, n) == doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("Sobolev row-sum checks") {
  const int n = 3;
  const OrbitTable orbits(n);
  TruncatedState zero(n);
  for (const auto& e : row_sum_check(zero, orbits, 2.0)) CHECK(e.rowsum == 0.0);
  CHECK_THROWS_AS(row_sum_check(zero, orbits, 1.2), InvalidParameter);
  CHECK_THROWS_AS(row_sum_check(zero, orbits, 3.0), InvalidParameter);
  CHECK_THROWS_AS(row_sum_check(zero, orbits, 1.5), InvalidParameter);

  for (double s : {1.6, 2.0, 2.5, 2.9}) {
    const auto u = random_state(n, s, 1.3, 17);
    const double cube = std::pow(h_s_norm(u, s), 3);
    const auto m = transfer_matrix(u, orbits);
    const auto weights = pair_weight_bound(orbits, s);
    for (std::size_t a = 0; a < orbits.size(); ++a)
      for (std::size_t b = 0; b < orbits.size(); ++b)
        REQUIRE(std::abs(m.entries(a, b)) <= cube * weights(a, b) * (1 + 1e-10));
    for (const auto& e : row_sum_check(u, orbits, s)) {
      REQUIRE(e.rowsum <= e.intermediate_bound * (1 + 1e-10));
      REQUIRE(e.bound_shape > 0.0);
      REQUIRE(e.ratio == doctest::Approx(e.rowsum / e.bound_shape));
    }
  }
}
