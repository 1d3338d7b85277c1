#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "orbitns/matrix.hpp"
#include "orbitns/mode.hpp"
#include "orbitns/symmetry.hpp"

namespace orbitns {

using Complex = std::complex<double>;
using Vec3c = std::array<Complex, 3>;

/// Tolerances applied when validating a state on ingest.
inline constexpr double kRealityTol = 1e-12;
inline constexpr double kDivergenceTol = 1e-12;

/// Fourier coefficients u_k for every retained mode, stored in lattice order.
///
/// The class does not enforce the physical invariants itself; states that come
/// from outside (files, user code) go through validate_state().
class TruncatedState {
 public:
  explicit TruncatedState(int n);

  int truncation() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  Vec3c& operator[](const Mode& k) { return coeffs_[lattice_index(k, n_)]; }
  const Vec3c& operator[](const Mode& k) const { return coeffs_[lattice_index(k, n_)]; }
  Vec3c& at_index(std::size_t i) { return coeffs_[i]; }
  const Vec3c& at_index(std::size_t i) const { return coeffs_[i]; }

  std::span<Vec3c> coeffs() { return coeffs_; }
  std::span<const Vec3c> coeffs() const { return coeffs_; }

  friend bool operator==(const TruncatedState&, const TruncatedState&) = default;

 private:
  int n_;
  std::vector<Vec3c> coeffs_;
};

/// Throws ValidationError naming the violated invariant and the offending mode:
/// non-finite value, reality u_{-k} = conj(u_k), or incompressibility k . u_k = 0.
void validate_state(const TruncatedState& u);

// Small complex-vector helpers.
double norm(const Vec3c& v);
Complex dot(const Mode& k, const Vec3c& v);
Vec3c conj(const Vec3c& v);

/// v - k (k . v) / |k|^2. Throws DomainError for k = 0.
Vec3c leray_project(const Mode& k, const Vec3c& v);

/// -i sum_{p, q = k - p} P(k)[(u_p . q) u_q], the convective term of u . grad u. Throws DomainError if k is not retained.
Vec3c nonlinear_term(const TruncatedState& u, const Mode& k);

/// Right-hand side -nu |k|^2 u_k + nonlinear_term(u, k) for every mode. The
/// nonlinear part is evaluated on the half lattice and mirrored, so the result
/// satisfies reality exactly. Throws InvalidParameter for nu < 0.
TruncatedState galerkin_rhs(const TruncatedState& u, double nu, int workers = 1);

/// M_{alpha beta}(u) evaluated triad by triad. Throws DomainError if either orbit
/// is not retained at the state's truncation.
double transfer_entry(const TruncatedState& u, const Orbit& alpha, const Orbit& beta);

struct TransferMatrix {
  std::vector<Mode> labels;  // canonical representatives, in orbit order
  SquareMatrix entries;
};

/// All M_{alpha beta}(u). Rows are assembled independently on up to `workers`
/// threads; accumulation order inside a row is fixed (k then p lexicographic),
/// so the result is bit-identical for any worker count.
TransferMatrix transfer_matrix(const TruncatedState& u, const OrbitTable& orbits,
                               int workers = 1);

struct Decomposition {
  SquareMatrix antisymmetric;
  SquareMatrix symmetric;
};

/// A = (M - M^T) / 2, V = (M + M^T) / 2.
Decomposition decompose(const SquareMatrix& m);

/// (sum_k |k|^{2s} |u_k|^2)^{1/2}.
double h_s_norm(const TruncatedState& u, double s);

/// Deterministic random divergence-free real state with h_s_norm(u, s) == norm.
///
/// Independent standard complex Gaussian vectors are drawn on the half lattice
/// (first nonzero coordinate positive), Leray-projected, mirrored by conjugation
/// and rescaled. Throws InvalidParameter unless norm > 0.
TruncatedState random_state(int n, double s, double norm, std::uint64_t seed);

/// Sigma_N(k) = sum over retained p with k - p retained of |p|^{-s} |k - p|^{1-s}.
double sigma_sum(const Mode& k, double s, int n);

/// sigma_sum for every orbit (constant on orbits), in orbit order.
std::vector<double> sigma_by_orbit(const OrbitTable& orbits, double s, int workers = 1);

/// Triad weight from the weighted orbit-pair estimate:
/// |k_alpha|^{2-s} (1/|alpha|) sum_{(k,p,q) in T_{alpha beta}} |p|^{-s} |q|^{1-s}.
/// Multiplied by M^3 it bounds |M_{alpha beta}(u)| whenever ||u||_{H^s} <= M.
SquareMatrix pair_weight_bound(const OrbitTable& orbits, double s, int workers = 1);

struct RowSumEntry {
  std::size_t orbit = 0;
  double rowsum = 0.0;               // sum_beta |M_{alpha beta}|
  double bound_shape = 0.0;          // ||u||^3 (|k|^{2-s} + |k|^{6-3s})
  double ratio = 0.0;                // rowsum / bound_shape (0 when both vanish)
  double intermediate_bound = 0.0;   // ||u||^3 |k|^{2-s} Sigma_N(k)
};

/// Row sums of the transfer matrix against the Sobolev bound shape.
/// Throws InvalidParameter unless 3/2 < s < 3.
std::vector<RowSumEntry> row_sum_check(const TruncatedState& u, const OrbitTable& orbits,
                                       double s, int workers = 1);
std::vector<RowSumEntry> row_sum_check(const TransferMatrix& m, const TruncatedState& u,
                                       const OrbitTable& orbits, double s, int workers = 1);

}  // namespace orbitns
