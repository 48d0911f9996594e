"""
Relativistic energy levels of spin-zero two-body Coulomb bound states.

Masses and energies are rest energies in MeV; lengths are in fm.
"""

from .constants import (
    ParticleSpec,
    PhysicalConstants,
    default_catalog,
    default_constants,
    load_catalog,
    load_constants,
    lookup_particle,
    write_catalog,
)
from .core import (
    MassAccounting,
    ReducedMasses,
    TwoBodySystem,
    identity_residuals,
    reduced_masses,
    salpeter_dispersion,
    speed_type_reduced_mass,
    system_mass,
)
from .errors import (
    BracketError,
    CatalogError,
    ConvergenceError,
    DegenerateRecurrenceError,
    InconsistentStateError,
    IntegrationError,
    NegativeRadicandError,
    ParticleNotFoundError,
    SupercriticalCouplingError,
    TailGuardError,
    TwoBodyError,
)
from .radial import (
    RadialScale,
    SeriesSolution,
    exponent_s,
    node_count,
    radial_scale,
    radial_wavefunction,
    recurrence_coeffs,
    series_for_level,
)
from .reference import (
    ComparisonRow,
    abnormal_nonrel,
    abnormal_particleium_spectrum,
    bohr_binding,
    compare_level,
    connell_energy,
    connell_epsilon,
    kg_one_body_energy,
    pionic_hydrogen_series,
)
from .shooting import (
    EigenResult,
    ShootingConfig,
    beta_closed_form,
    compare_beta,
    shoot_eigenvalue_approx,
    shoot_eigenvalue_full,
)
from .spectrum import (
    Branch,
    D0Policy,
    QuantumNumbers,
    SolverConfig,
    SpectrumLevel,
    binding_from_beta,
    energy_abnormal,
    energy_normal,
    residual_quadratic_53,
    sigma_l_zeroth,
    solve_level,
)

__version__ = "0.1.0"
