#include "orbitns/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "orbitns/error.hpp"
#include "orbitns/lattice.hpp"
#include "orbitns/parallel.hpp"
#include "triads.hpp"

namespace orbitns {

namespace {

void require_orbit_at(const Orbit& orbit, int n) {
  if (orbit.members.empty() || orbit.max_norm() > n) {
    throw DomainError("orbit " + to_label(orbit.canonical) + " is not retained at N=" +
                      std::to_string(n));
  }
}

}  // namespace

std::int64_t r2(std::int64_t n) {
  if (n < 0) throw DomainError("r2: negative argument " + std::to_string(n));
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  std::int64_t count = 0;
  for (std::int64_t a = -root; a <= root; ++a) {
    const std::int64_t rest = n - a * a;
    auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (b * b == rest) count += b == 0 ? 1 : 2;
  }
  return count;
}

std::vector<Mode> shell_slice(const Mode& k, std::int64_t r, int n) {
  require_in_lattice(k, n);
  std::vector<Mode> out;
  detail::for_each_source(k, n, [&](const Mode& p) {
    if (p.norm2() == r) out.push_back(p);
  });
  return out;
}

int face_height(const Mode& p, const Mode& k, const Face& f, int n) {
  if (!in_box(p, k, n)) {
    throw DomainError("face_height: " + to_label(p) + " lies outside B(" + to_label(k) + ")");
  }
  const auto j = static_cast<std::size_t>(f.axis);
  return f.sign > 0 ? k[j] + n - p[j] : p[j] - (k[j] - n);
}

NearestFace min_face(const Mode& p, const Mode& k, int n) {
  NearestFace best{kFaces[0], face_height(p, k, kFaces[0], n)};
  for (std::size_t i = 1; i < kFaces.size(); ++i) {
    const int h = face_height(p, k, kFaces[i], n);
    if (h < best.height) best = {kFaces[i], h};
  }
  return best;
}

int dyadic_scale(int h) {
  if (h <= 1) return 1;
  int scale = 1;
  while (scale <= h / 2) scale *= 2;
  return scale;
}

PatchMap patch_decompose(const Mode& k, std::int64_t r, int n) {
  PatchMap patches;
  for (const auto& p : shell_slice(k, r, n)) {
    const auto nearest = min_face(p, k, n);
    patches[PatchKey{nearest.face, dyadic_scale(nearest.height)}].push_back(p);
  }
  return patches;
}

std::int64_t gamma(const Orbit& alpha, const Orbit& beta, int n) {
  require_truncation(n);
  require_orbit_at(alpha, n);
  require_orbit_at(beta, n);
  const Mode& k = alpha.canonical;
  const auto m = std::count_if(beta.members.begin(), beta.members.end(),
                               [&](const Mode& p) { return in_lattice(k - p, n); });
  return static_cast<std::int64_t>(alpha.size()) * m;
}

std::int64_t IncidenceRecord::row_total() const {
  return std::accumulate(gamma.begin(), gamma.end(), std::int64_t{0});
}

IncidenceRecord incidence_row(const OrbitTable& orbits, std::size_t alpha) {
  const int n = orbits.truncation();
  IncidenceRecord rec;
  rec.target = alpha;
  rec.gamma.assign(orbits.size(), 0);
  const Orbit& target = orbits[alpha];
  detail::for_each_source(target.canonical, n,
                  [&](const Mode& p) { ++rec.gamma[orbits.orbit_index(p)]; });
  const auto weight = static_cast<std::int64_t>(target.size());
  for (auto& g : rec.gamma) {
    g *= weight;
    rec.row_sqrt_sum += std::sqrt(static_cast<double>(g));
  }
  return rec;
}

std::vector<IncidenceRecord> incidence_matrix(const OrbitTable& orbits, int workers) {
  std::vector<IncidenceRecord> rows(orbits.size());
  parallel_for(orbits.size(), workers,
               [&](std::size_t a) { rows[a] = incidence_row(orbits, a); });
  return rows;
}

std::vector<IncidenceScanPoint> max_incidence_scan(int n_max, int workers) {
  require_truncation(n_max);
  std::vector<IncidenceScanPoint> out;
  for (int n = 1; n <= n_max; ++n) {
    const OrbitTable orbits(n);
    double best = 0.0;
    for (const auto& row : incidence_matrix(orbits, workers))
      best = std::max(best, row.row_sqrt_sum);
    out.push_back({n, best});
  }
  return out;
}

double loglog_slope(std::span<const IncidenceScanPoint> points, int n_min) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& pt : points) {
    if (pt.n < n_min) continue;
    const double x = std::log(static_cast<double>(pt.n));
    const double y = std::log(pt.max_row_sqrt_sum);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw InvalidParameter("loglog_slope needs at least two points with N >= n_min");
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace orbitns
