"""Orbit-reduced cubic Fourier-Galerkin truncation of 3D Navier-Stokes."""

from ._orbitns import (
    DivergenceError,
    State,
    ValidationError,
    canonical_rep,
    decompose,
    default_time_step,
    diagnostics_table,
    enumerate_lattice,
    enumerate_orbits,
    galerkin_rhs,
    gamma,
    incidence_matrix,
    leray_project,
    max_incidence_scan,
    max_triad_count,
    nonlinear_term,
    orbit,
    read_state,
    row_sum_check,
    shell_radii,
    sigma_sum,
    simulate,
    step_rk4,
    total_triads,
    transfer_matrix,
    triad_count,
    triad_count_brute,
    verify_enstrophy_identity,
    write_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
