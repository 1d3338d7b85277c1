#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace orbitns {

/// One row of the exact finite-N combinatorial table.
struct DiagnosticsRow {
  int n = 0;
  std::size_t modes = 0;        // |Lambda_N|
  std::size_t orbits = 0;       // |O_N|
  std::size_t shells = 0;       // |R_N|
  std::int64_t max_triads = 0;  // max_k T(k, N)
  std::int64_t total_triads = 0;

  friend bool operator==(const DiagnosticsRow&, const DiagnosticsRow&) = default;
};

/// Computes orbit and shell counts by enumeration; the triad columns come from
/// the per-mode count summed over the lattice.
DiagnosticsRow diagnostics_row(int n);

std::vector<DiagnosticsRow> diagnostics_table(int n_max);

}  // namespace orbitns
