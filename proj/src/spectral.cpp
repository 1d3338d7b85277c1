#include "orbitns/spectral.hpp"

#include <cmath>
#include <random>
#include <string>

#include "orbitns/error.hpp"
#include "orbitns/lattice.hpp"
#include "orbitns/parallel.hpp"
#include "triads.hpp"

namespace orbitns {

namespace {

const Complex kMinusI{0.0, -1.0};

// Re(sum_j conj(a_j) w_j)
double pairing(const Vec3c& a, const Vec3c& w) {
  double out = 0.0;
  for (std::size_t j = 0; j < 3; ++j) out += (std::conj(a[j]) * w[j]).real();
  return out;
}

// acc += (u_p . q) u_q
void add_triad(Vec3c& acc, const Vec3c& up, const Mode& q, const Vec3c& uq) {
  const Complex s = static_cast<double>(q[0]) * up[0] + static_cast<double>(q[1]) * up[1] +
                    static_cast<double>(q[2]) * up[2];
  for (std::size_t j = 0; j < 3; ++j) acc[j] += s * uq[j];
}

Vec3c times(Complex s, const Vec3c& v) { return {s * v[0], s * v[1], s * v[2]}; }

bool finite(const Vec3c& v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void require_orbit_at(const Orbit& orbit, int n) {
  if (orbit.members.empty() || orbit.max_norm() > n) {
    throw DomainError("orbit " + to_label(orbit.canonical) + " is not retained at N=" +
                      std::to_string(n));
  }
}

// |p|^{-s} and |q|^{1-s} tabulated by squared norm.
struct PowerTables {
  std::vector<double> source;    // r^{-s/2}
  std::vector<double> partner;   // r^{(1-s)/2}

  PowerTables(int n, double s) : source(3 * std::size_t(n) * n + 1), partner(source.size()) {
    for (std::size_t r = 1; r < source.size(); ++r) {
      const double rr = static_cast<double>(r);
      source[r] = std::pow(rr, -0.5 * s);
      partner[r] = std::pow(rr, 0.5 * (1.0 - s));
    }
  }
};

}  // namespace

TruncatedState::TruncatedState(int n) : n_(n) {
  require_truncation(n);
  coeffs_.assign(lattice_size(n), Vec3c{});
}

double norm(const Vec3c& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

Complex dot(const Mode& k, const Vec3c& v) {
  return static_cast<double>(k[0]) * v[0] + static_cast<double>(k[1]) * v[1] +
         static_cast<double>(k[2]) * v[2];
}

Vec3c conj(const Vec3c& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

void validate_state(const TruncatedState& u) {
  const int n = u.truncation();
  const std::size_t size = u.size();
  for (std::size_t i = 0; i < size; ++i) {
    const Mode k = lattice_mode(i, n);
    const Vec3c& v = u.at_index(i);
    if (!finite(v)) throw ValidationError("non-finite coefficient at mode " + to_label(k));
    const Vec3c& mirror = u.at_index(size - 1 - i);
    double diff = 0.0;
    for (std::size_t j = 0; j < 3; ++j) diff += std::norm(mirror[j] - std::conj(v[j]));
    if (std::sqrt(diff) > kRealityTol * std::max(norm(v), norm(mirror))) {
      throw ValidationError("reality violated at mode " + to_label(k) +
                            ": u(-k) != conj(u(k))");
    }
    const double knorm = std::sqrt(static_cast<double>(k.norm2()));
    if (std::abs(dot(k, v)) > kDivergenceTol * knorm * norm(v)) {
      throw ValidationError("incompressibility violated at mode " + to_label(k) +
                            ": k . u(k) != 0");
    }
  }
}

Vec3c leray_project(const Mode& k, const Vec3c& v) {
  if (k.is_zero()) throw DomainError("leray_project: zero wavevector");
  const Complex c = dot(k, v) / static_cast<double>(k.norm2());
  Vec3c out = v;
  for (std::size_t j = 0; j < 3; ++j) out[j] -= static_cast<double>(k[j]) * c;
  return out;
}

Vec3c nonlinear_term(const TruncatedState& u, const Mode& k) {
  const int n = u.truncation();
  require_in_lattice(k, n);
  Vec3c acc{};
  detail::for_each_source(k, n, [&](const Mode& p) {
    const Mode q = k - p;
    add_triad(acc, u[p], q, u[q]);
  });
  return times(kMinusI, leray_project(k, acc));
}

TruncatedState galerkin_rhs(const TruncatedState& u, double nu, int workers) {
  if (!(nu >= 0.0)) throw InvalidParameter("viscosity must be >= 0");
  const int n = u.truncation();
  TruncatedState rhs(n);
  const std::size_t size = u.size();
  const std::size_t half = size / 2;
  parallel_for(size - half, workers, [&](std::size_t offset) {
    const std::size_t i = half + offset;
    const Mode k = lattice_mode(i, n);
    Vec3c value = nonlinear_term(u, k);
    const double damping = nu * static_cast<double>(k.norm2());
    for (std::size_t j = 0; j < 3; ++j) value[j] -= damping * u.at_index(i)[j];
    rhs.at_index(i) = value;
    rhs.at_index(size - 1 - i) = conj(value);
  });
  return rhs;
}

double transfer_entry(const TruncatedState& u, const Orbit& alpha, const Orbit& beta) {
  const int n = u.truncation();
  require_orbit_at(alpha, n);
  require_orbit_at(beta, n);
  double total = 0.0;
  for (const auto& k : alpha.members) {
    const double k2 = static_cast<double>(k.norm2());
    for (const auto& p : beta.members) {
      const Mode q = k - p;
      if (!in_lattice(q, n)) continue;
      Vec3c w{};
      add_triad(w, u[p], q, u[q]);
      total += k2 * pairing(u[k], times(kMinusI, leray_project(k, w)));
    }
  }
  return total / static_cast<double>(alpha.size());
}

TransferMatrix transfer_matrix(const TruncatedState& u, const OrbitTable& orbits, int workers) {
  const int n = u.truncation();
  if (orbits.truncation() != n) throw DomainError("orbit table and state truncation differ");
  const std::size_t dim = orbits.size();
  TransferMatrix out;
  out.entries = SquareMatrix(dim);
  for (const auto& o : orbits.orbits()) out.labels.push_back(o.canonical);

  parallel_for(dim, workers, [&](std::size_t a) {
    const Orbit& alpha = orbits[a];
    std::vector<Vec3c> partial(dim);
    std::vector<std::size_t> touched;
    std::vector<char> seen(dim, 0);
    std::vector<double> row(dim, 0.0);
    for (const auto& k : alpha.members) {
      for (auto b : touched) {
        partial[b] = Vec3c{};
        seen[b] = 0;
      }
      touched.clear();
      detail::for_each_source(k, n, [&](const Mode& p) {
        const std::size_t b = orbits.orbit_index(p);
        if (!seen[b]) {
          seen[b] = 1;
          touched.push_back(b);
        }
        const Mode q = k - p;
        add_triad(partial[b], u[p], q, u[q]);
      });
      const double k2 = static_cast<double>(k.norm2());
      const Vec3c& uk = u[k];
      for (auto b : touched) row[b] += k2 * pairing(uk, times(kMinusI, leray_project(k, partial[b])));
    }
    const double inv = 1.0 / static_cast<double>(alpha.size());
    for (std::size_t b = 0; b < dim; ++b) out.entries(a, b) = row[b] * inv;
  });
  return out;
}

Decomposition decompose(const SquareMatrix& m) {
  const std::size_t dim = m.dim();
  Decomposition d{SquareMatrix(dim), SquareMatrix(dim)};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      d.antisymmetric(i, j) = 0.5 * (m(i, j) - m(j, i));
      d.symmetric(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
  return d;
}

double h_s_norm(const TruncatedState& u, double s) {
  const int n = u.truncation();
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto k2 = static_cast<double>(lattice_mode(i, n).norm2());
    const Vec3c& v = u.at_index(i);
    total += std::pow(k2, s) * (std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  }
  return std::sqrt(total);
}

TruncatedState random_state(int n, double s, double norm_value, std::uint64_t seed) {
  if (!(norm_value > 0.0) || !std::isfinite(norm_value)) {
    throw InvalidParameter("random_state: target norm must be positive and finite");
  }
  TruncatedState u(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const std::size_t size = u.size();
  for (std::size_t i = size / 2; i < size; ++i) {
    Vec3c v;
    for (auto& z : v) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z = Complex(re, im);
    }
    u.at_index(i) = leray_project(lattice_mode(i, n), v);
  }
  // Only the positive half is filled so far; mirroring doubles the squared norm.
  const double scale = norm_value / (std::sqrt(2.0) * h_s_norm(u, s));
  for (std::size_t i = size / 2; i < size; ++i) {
    for (auto& z : u.at_index(i)) z *= scale;
    u.at_index(size - 1 - i) = conj(u.at_index(i));
  }
  return u;
}

double sigma_sum(const Mode& k, double s, int n) {
  require_in_lattice(k, n);
  double total = 0.0;
  detail::for_each_source(k, n, [&](const Mode& p) {
    const Mode q = k - p;
    total += std::pow(static_cast<double>(p.norm2()), -0.5 * s) *
             std::pow(static_cast<double>(q.norm2()), 0.5 * (1.0 - s));
  });
  return total;
}

std::vector<double> sigma_by_orbit(const OrbitTable& orbits, double s, int workers) {
  const int n = orbits.truncation();
  const PowerTables pw(n, s);
  std::vector<double> out(orbits.size(), 0.0);
  parallel_for(orbits.size(), workers, [&](std::size_t a) {
    const Mode& k = orbits[a].canonical;
    double total = 0.0;
    detail::for_each_source(k, n, [&](const Mode& p) {
      total += pw.source[static_cast<std::size_t>(p.norm2())] *
               pw.partner[static_cast<std::size_t>((k - p).norm2())];
    });
    out[a] = total;
  });
  return out;
}

SquareMatrix pair_weight_bound(const OrbitTable& orbits, double s, int workers) {
  const int n = orbits.truncation();
  const PowerTables pw(n, s);
  SquareMatrix out(orbits.size());
  parallel_for(orbits.size(), workers, [&](std::size_t a) {
    const Mode& k = orbits[a].canonical;
    // Every member of alpha contributes the same triad sum, so the orbit
    // average equals the canonical member's sum.
    std::vector<double> row(orbits.size(), 0.0);
    detail::for_each_source(k, n, [&](const Mode& p) {
      row[orbits.orbit_index(p)] += pw.source[static_cast<std::size_t>(p.norm2())] *
                                    pw.partner[static_cast<std::size_t>((k - p).norm2())];
    });
    const double lead = std::pow(static_cast<double>(k.norm2()), 0.5 * (2.0 - s));
    for (std::size_t b = 0; b < orbits.size(); ++b) out(a, b) = lead * row[b];
  });
  return out;
}

std::vector<RowSumEntry> row_sum_check(const TruncatedState& u, const OrbitTable& orbits,
                                       double s, int workers) {
  if (!(s > 1.5 && s < 3.0)) {
    throw InvalidParameter("row-sum bound requires 3/2 < s < 3, got s=" + std::to_string(s));
  }
  return row_sum_check(transfer_matrix(u, orbits, workers), u, orbits, s, workers);
}

std::vector<RowSumEntry> row_sum_check(const TransferMatrix& m, const TruncatedState& u,
                                       const OrbitTable& orbits, double s, int workers) {
  if (!(s > 1.5 && s < 3.0)) {
    throw InvalidParameter("row-sum bound requires 3/2 < s < 3, got s=" + std::to_string(s));
  }
  const double hs = h_s_norm(u, s);
  const double cube = hs * hs * hs;
  const auto sigma = sigma_by_orbit(orbits, s, workers);
  std::vector<RowSumEntry> out;
  out.reserve(orbits.size());
  for (std::size_t a = 0; a < orbits.size(); ++a) {
    RowSumEntry e;
    e.orbit = a;
    for (std::size_t b = 0; b < orbits.size(); ++b) e.rowsum += std::abs(m.entries(a, b));
    const double knorm = std::sqrt(static_cast<double>(orbits[a].norm2()));
    e.bound_shape = cube * (std::pow(knorm, 2.0 - s) + std::pow(knorm, 6.0 - 3.0 * s));
    e.ratio = e.bound_shape > 0.0 ? e.rowsum / e.bound_shape : 0.0;
    e.intermediate_bound = cube * std::pow(knorm, 2.0 - s) * sigma[a];
    out.push_back(e);
  }
  return out;
}

}  // namespace orbitns
