#include "orbitns/diagnostics.hpp"

#include <algorithm>
#include <set>

#include "orbitns/lattice.hpp"
#include "orbitns/symmetry.hpp"

namespace orbitns {

DiagnosticsRow diagnostics_row(int n) {
  DiagnosticsRow row;
  row.n = n;
  const auto modes = enumerate_lattice(n);
  row.modes = modes.size();
  std::set<Mode> canonicals;
  std::set<std::int64_t> radii;
  for (const auto& k : modes) {
    canonicals.insert(canonical_rep(k));
    radii.insert(k.norm2());
    const auto t = triad_count_exact(k, n);
    row.max_triads = std::max(row.max_triads, t);
    row.total_triads += t;
  }
  row.orbits = canonicals.size();
  row.shells = radii.size();
  return row;
}

std::vector<DiagnosticsRow> diagnostics_table(int n_max) {
  require_truncation(n_max);
  std::vector<DiagnosticsRow> rows;
  for (int n = 1; n <= n_max; ++n) rows.push_back(diagnostics_row(n));
  return rows;
}

}  // namespace orbitns
