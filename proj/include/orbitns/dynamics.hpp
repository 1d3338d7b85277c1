#pragma once

#include <vector>

#include "orbitns/spectral.hpp"
#include "orbitns/symmetry.hpp"

namespace orbitns {

/// Relative tolerance for the orbit-level enstrophy identity.
inline constexpr double kIdentityTol = 1e-10;

/// Z_alpha = (1 / (2|alpha|)) sum_{k in alpha} |k|^2 |u_k|^2.
double orbit_enstrophy(const TruncatedState& u, const Orbit& alpha);

/// D_alpha = (1 / |alpha|) sum_{k in alpha} |k|^4 |u_k|^2.
double orbit_dissipation(const TruncatedState& u, const Orbit& alpha);

/// Z_N = (1/2) sum_k |k|^2 |u_k|^2.
double total_enstrophy(const TruncatedState& u);

/// (1/2) sum_k |u_k|^2.
double kinetic_energy(const TruncatedState& u);

struct OrbitDiagnostics {
  Mode canonical;
  double enstrophy = 0.0;          // Z_alpha
  double dissipation = 0.0;        // D_alpha
  double dzdt_direct = 0.0;        // from the Galerkin right-hand side
  double dzdt_from_matrix = 0.0;   // -nu D_alpha + sum_beta M_{alpha beta}
  double residual = 0.0;           // |direct - from_matrix|
  double scale = 1.0;              // max(1, sum_beta |M_{alpha beta}|, nu D_alpha)
};

struct IdentityCheck {
  std::vector<OrbitDiagnostics> orbits;
  // sum_alpha |alpha| (-nu D_alpha + sum_beta M_{alpha beta})
  double aggregate_from_matrix = 0.0;
  // -nu sum_k |k|^4 |u_k|^2 + sum_k |k|^2 Re(conj(u_k) . nonlinear_term(u, k))
  double aggregate_direct = 0.0;
  double aggregate_scale = 1.0;

  /// max over orbits of residual / scale.
  double max_relative_residual() const;
  double aggregate_relative_residual() const;
  bool holds(double tol = kIdentityTol) const;
};

/// Evaluates both sides of the orbit-level enstrophy identity at one instant.
IdentityCheck verify_enstrophy_identity(const TruncatedState& u, double nu,
                                        const OrbitTable& orbits, int workers = 1);

/// One classical RK4 step. The result is Leray-projected once and validated.
/// Throws InvalidParameter unless dt > 0 and nu >= 0.
TruncatedState step_rk4(const TruncatedState& u, double dt, double nu, int workers = 1);

/// 1e-3 / (nu * 3N^2 + N * amplitude), amplitude = max_k |u_k|. Falls back to
/// 1e-3 when the denominator vanishes.
double default_time_step(const TruncatedState& u, double nu);

struct SimulationConfig {
  double nu = 0.0;
  double dt = 1e-3;
  long steps = 1;
  long diagnostics_every = 1;
  int workers = 1;
};

struct DiagnosticsRecord {
  long step = 0;
  double time = 0.0;
  IdentityCheck check;
};

/// Advances `steps` RK4 steps and records diagnostics at step 0 and every
/// `diagnostics_every` steps (and at the last step). Throws DivergenceError
/// carrying the step index if a non-finite coefficient appears.
std::vector<DiagnosticsRecord> simulate(const TruncatedState& u0, const SimulationConfig& config);

}  // namespace orbitns
