#include "orbitns/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbitns/error.hpp"
#include "orbitns/parallel.hpp"

namespace orbitns {

namespace {

double mode_energy(const Vec3c& v) { return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]); }

double pairing(const Vec3c& a, const Vec3c& w) {
  double out = 0.0;
  for (std::size_t j = 0; j < 3; ++j) out += (std::conj(a[j]) * w[j]).real();
  return out;
}

// base + factor * slope, mode by mode.
TruncatedState axpy(const TruncatedState& base, double factor, const TruncatedState& slope) {
  TruncatedState out = base;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) out.at_index(i)[j] += factor * slope.at_index(i)[j];
  return out;
}

bool all_finite(const TruncatedState& u) {
  for (const auto& v : u.coeffs())
    for (const auto& z : v)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void require_step_params(double dt, double nu) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("time step must be > 0");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidParameter("viscosity must be >= 0");
}

// Classical RK4 followed by one Leray projection; no validation.
TruncatedState advance(const TruncatedState& u, double dt, double nu, int workers) {
  const TruncatedState k1 = galerkin_rhs(u, nu, workers);
  const TruncatedState k2 = galerkin_rhs(axpy(u, 0.5 * dt, k1), nu, workers);
  const TruncatedState k3 = galerkin_rhs(axpy(u, 0.5 * dt, k2), nu, workers);
  const TruncatedState k4 = galerkin_rhs(axpy(u, dt, k3), nu, workers);
  TruncatedState out = u;
  const int n = u.truncation();
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Vec3c& v = out.at_index(i);
    for (std::size_t j = 0; j < 3; ++j) {
      v[j] += w * (k1.at_index(i)[j] + 2.0 * k2.at_index(i)[j] + 2.0 * k3.at_index(i)[j] +
                   k4.at_index(i)[j]);
    }
    v = leray_project(lattice_mode(i, n), v);
  }
  return out;
}

}  // namespace

double orbit_enstrophy(const TruncatedState& u, const Orbit& alpha) {
  if (alpha.members.empty() || alpha.max_norm() > u.truncation())
    throw DomainError("orbit " + to_label(alpha.canonical) + " not retained by state");
  double total = 0.0;
  for (const auto& k : alpha.members) total += static_cast<double>(k.norm2()) * mode_energy(u[k]);
  return total / (2.0 * static_cast<double>(alpha.size()));
}

double orbit_dissipation(const TruncatedState& u, const Orbit& alpha) {
  if (alpha.members.empty() || alpha.max_norm() > u.truncation())
    throw DomainError("orbit " + to_label(alpha.canonical) + " not retained by state");
  double total = 0.0;
  for (const auto& k : alpha.members) {
    const auto k2 = static_cast<double>(k.norm2());
    total += k2 * k2 * mode_energy(u[k]);
  }
  return total / static_cast<double>(alpha.size());
}

double total_enstrophy(const TruncatedState& u) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    total += static_cast<double>(lattice_mode(i, u.truncation()).norm2()) * mode_energy(u.at_index(i));
  return 0.5 * total;
}

double kinetic_energy(const TruncatedState& u) {
  double total = 0.0;
  for (const auto& v : u.coeffs()) total += mode_energy(v);
  return 0.5 * total;
}

double IdentityCheck::max_relative_residual() const {
  double worst = 0.0;
  for (const auto& o : orbits) worst = std::max(worst, o.residual / o.scale);
  return worst;
}

double IdentityCheck::aggregate_relative_residual() const {
  return std::abs(aggregate_from_matrix - aggregate_direct) / aggregate_scale;
}

bool IdentityCheck::holds(double tol) const {
  return max_relative_residual() <= tol && aggregate_relative_residual() <= tol;
}

IdentityCheck verify_enstrophy_identity(const TruncatedState& u, double nu,
                                        const OrbitTable& orbits, int workers) {
  if (orbits.truncation() != u.truncation())
    throw DomainError("orbit table and state truncation differ");
  const TruncatedState rhs = galerkin_rhs(u, nu, workers);
  const TransferMatrix m = transfer_matrix(u, orbits, workers);

  IdentityCheck check;
  check.orbits.resize(orbits.size());
  double aggregate_scale = 0.0;
  for (std::size_t a = 0; a < orbits.size(); ++a) {
    const Orbit& alpha = orbits[a];
    OrbitDiagnostics& d = check.orbits[a];
    d.canonical = alpha.canonical;
    d.enstrophy = orbit_enstrophy(u, alpha);
    d.dissipation = orbit_dissipation(u, alpha);
    double direct = 0.0;
    for (const auto& k : alpha.members)
      direct += static_cast<double>(k.norm2()) * pairing(u[k], rhs[k]);
    d.dzdt_direct = direct / static_cast<double>(alpha.size());
    double transfer = 0.0, magnitude = 0.0;
    for (std::size_t b = 0; b < orbits.size(); ++b) {
      transfer += m.entries(a, b);
      magnitude += std::abs(m.entries(a, b));
    }
    d.dzdt_from_matrix = -nu * d.dissipation + transfer;
    d.residual = std::abs(d.dzdt_direct - d.dzdt_from_matrix);
    d.scale = std::max({1.0, magnitude, nu * d.dissipation});
    const auto weight = static_cast<double>(alpha.size());
    check.aggregate_from_matrix += weight * d.dzdt_from_matrix;
    aggregate_scale += weight * d.scale;
  }
  check.aggregate_scale = std::max(1.0, aggregate_scale);

  // Mode-level balance, evaluated mode by mode without the orbit grouping.
  const int n = u.truncation();
  std::vector<double> per_mode(u.size(), 0.0);
  parallel_for(u.size(), workers, [&](std::size_t i) {
    const Mode k = lattice_mode(i, n);
    const auto k2 = static_cast<double>(k.norm2());
    const Vec3c& uk = u.at_index(i);
    per_mode[i] = -nu * k2 * k2 * mode_energy(uk) + k2 * pairing(uk, nonlinear_term(u, k));
  });
  for (double v : per_mode) check.aggregate_direct += v;
  return check;
}

TruncatedState step_rk4(const TruncatedState& u, double dt, double nu, int workers) {
  require_step_params(dt, nu);
  TruncatedState out = advance(u, dt, nu, workers);
  validate_state(out);
  return out;
}

double default_time_step(const TruncatedState& u, double nu) {
  double amplitude = 0.0;
  for (const auto& v : u.coeffs()) amplitude = std::max(amplitude, norm(v));
  const int n = u.truncation();
  const double denom = nu * 3.0 * n * n + n * amplitude;
  return denom > 0.0 ? 1e-3 / denom : 1e-3;
}

std::vector<DiagnosticsRecord> simulate(const TruncatedState& u0, const SimulationConfig& config) {
  require_step_params(config.dt, config.nu);
  if (config.steps < 1) throw InvalidParameter("steps must be >= 1");
  if (config.diagnostics_every < 1) throw InvalidParameter("diagnostics cadence must be >= 1");
  validate_state(u0);

  const OrbitTable orbits(u0.truncation());
  std::vector<DiagnosticsRecord> records;
  auto record = [&](long step, const TruncatedState& u) {
    records.push_back({step, static_cast<double>(step) * config.dt,
                       verify_enstrophy_identity(u, config.nu, orbits, config.workers)});
  };

  TruncatedState u = u0;
  record(0, u);
  for (long step = 1; step <= config.steps; ++step) {
    u = advance(u, config.dt, config.nu, config.workers);
    if (!all_finite(u)) {
      throw DivergenceError(step, "simulation diverged at step " + std::to_string(step));
    }
    validate_state(u);
    if (step % config.diagnostics_every == 0 || step == config.steps) record(step, u);
  }
  return records;
}

}  // namespace orbitns
