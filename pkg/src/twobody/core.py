"""
Mass bookkeeping for a two-particle system.

Everything is in MeV with c = 1: a rest mass and its rest energy are the same
number, and momenta are passed as ``|p| c``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import ParticleSpec, PhysicalConstants
from .errors import InconsistentStateError

__all__ = [
    "TwoBodySystem",
    "MassAccounting",
    "ReducedMasses",
    "system_mass",
    "reduced_masses",
    "identity_residuals",
    "speed_type_reduced_mass",
    "salpeter_dispersion",
    "CONSISTENCY_RTOL",
]

#: relative tolerance on ``m = m0 + E'`` before a pair is rejected
CONSISTENCY_RTOL = 1e-12


@dataclass(frozen=True)
class TwoBodySystem:
    """
    Two particles bound by ``U = -Z alpha hbar c / r``.

    Parameters
    ----------
    m01, m02 : float
        Rest masses (MeV).
    Z : int
        Charge number of the Coulomb source.
    alpha : float
        Coupling constant. ``alpha = 0`` is accepted and switches the
        interaction off (useful as the free limit).
    """

    m01: float
    m02: float
    Z: int = 1
    alpha: float = 7.2973525693e-3

    def __post_init__(self):
        if not (self.m01 > 0 and self.m02 > 0):
            raise ValueError(f"rest masses must be positive, got {self.m01!r}, {self.m02!r}")
        if int(self.Z) != self.Z or self.Z < 1:
            raise ValueError(f"Z must be a positive integer, got {self.Z!r}")
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha!r}")

    @classmethod
    def from_particles(
        cls, p1: ParticleSpec, p2: ParticleSpec, Z: int, constants: PhysicalConstants | float
    ) -> "TwoBodySystem":
        alpha = constants if isinstance(constants, (int, float)) else constants.alpha
        return cls(p1.rest_energy, p2.rest_energy, Z, float(alpha))

    @property
    def m0(self) -> float:
        """Total rest mass."""
        return self.m01 + self.m02

    @property
    def zalpha(self) -> float:
        return self.Z * self.alpha

    @property
    def nonrel_reduced_mass(self) -> float:
        return self.m01 * self.m02 / (self.m01 + self.m02)

    def swapped(self) -> "TwoBodySystem":
        return TwoBodySystem(self.m02, self.m01, self.Z, self.alpha)


@dataclass(frozen=True)
class MassAccounting:
    m0: float
    Eprime: float
    m: float
    delta_m: float
    E: float

    @property
    def binding_energy(self) -> float:
        return -self.Eprime

    @property
    def bound(self) -> bool:
        return self.Eprime < 0


@dataclass(frozen=True)
class ReducedMasses:
    mu0: float
    mu: float


def system_mass(system: TwoBodySystem, Eprime: float) -> MassAccounting:
    """
    System mass ``m = m0 + E'`` together with the mass defect and total energy.

    A non-positive system mass only triggers a warning: the abnormal branch
    legitimately approaches ``m -> 0``.
    """
    m0 = system.m0
    m = m0 + Eprime
    if m <= 0:
        warnings.warn(f"non-positive system mass m = {m!r} MeV", RuntimeWarning, stacklevel=2)
    return MassAccounting(m0=m0, Eprime=Eprime, m=m, delta_m=-Eprime, E=m)


def _check_pair(system: TwoBodySystem, m: float, Eprime: float) -> None:
    expected = system.m0 + Eprime
    if abs(m - expected) > CONSISTENCY_RTOL * max(abs(m), abs(expected), system.m0):
        raise InconsistentStateError(
            f"system mass m = {m!r} inconsistent with m0 + E' = {expected!r}"
        )


def reduced_masses(system: TwoBodySystem, m: float, Eprime: float) -> ReducedMasses:
    """``mu0 = 2 m01 m02 / (m0 + m)`` and ``mu = mu0 + E'``."""
    total = system.m0 + m
    if total == 0:
        raise ZeroDivisionError("m0 + m = 0: reduced mass undefined")
    mu0 = 2.0 * system.m01 * system.m02 / total
    return ReducedMasses(mu0=mu0, mu=mu0 + Eprime)


def _rel(lhs_terms, rhs_terms) -> float:
    """``(sum lhs - sum rhs)`` relative to the largest single term."""
    scale = max(abs(t) for t in (*lhs_terms, *rhs_terms))
    return 0.0 if scale == 0 else (math.fsum(lhs_terms) - math.fsum(rhs_terms)) / scale


def identity_residuals(system: TwoBodySystem, m: float, Eprime: float) -> tuple[float, float, float]:
    """
    Relative residuals of the three algebraic identities implied by the
    reduced-mass definition:

    * ``(m01 mu + m02 mu0)/m01 + (m02 mu + m01 mu0)/m02 = 2 m^2/(m0 + m)``
    * ``(m0 + m) E' + 2 m01 m02 = (m0 + m) mu``
    * ``((m0 + m) E' + 2 m01 m02)^2 = (m0 + m)^2 (mu0 + mu) E' + 4 m01^2 m02^2``

    Each residual is normalised by the largest term on either side, so deep
    binding (``m << m0``, where the terms cancel) does not inflate it.

    Raises
    ------
    InconsistentStateError
        If ``m`` and ``E'`` do not satisfy ``m = m0 + E'``.
    """
    _check_pair(system, m, Eprime)
    m01, m02, m0 = system.m01, system.m02, system.m0
    red = reduced_masses(system, m, Eprime)
    mu0, mu = red.mu0, red.mu
    s = m0 + m
    p = m01 * m02

    r20 = _rel((mu, m02 * mu0 / m01, mu, m01 * mu0 / m02), (2.0 * m * m / s,))
    r21 = _rel((s * Eprime, 2.0 * p), (s * mu,))
    r22 = _rel(
        ((s * Eprime + 2.0 * p) ** 2,),
        (s * s * (mu0 + mu) * Eprime, 4.0 * p * p),
    )
    return r20, r21, r22


def speed_type_reduced_mass(m01: float, m02: float, v1: float, v2: float) -> float:
    """
    Velocity-based reduced mass for collinear motion,
    ``m1 m2 / (m1 + m2) * (1 + v1 v2)`` with ``m_i = gamma_i m0i``.

    Speeds are signed fractions of c.
    """
    if abs(v1) >= 1 or abs(v2) >= 1:
        raise ValueError(f"speeds must satisfy |v| < c, got v1={v1!r}, v2={v2!r}")
    m1 = m01 / math.sqrt(1.0 - v1 * v1)
    m2 = m02 / math.sqrt(1.0 - v2 * v2)
    return m1 * m2 / (m1 + m2) * (1.0 + v1 * v2)


def salpeter_dispersion(system: TwoBodySystem, p1: float, p2: float, U: float) -> float:
    """Kinetic plus potential energy E' for momenta ``p1, p2`` (MeV) and potential ``U``."""
    if p1 < 0 or p2 < 0:
        raise ValueError("momentum magnitudes must be non-negative")
    m01, m02 = system.m01, system.m02
    return math.hypot(p1, m01) - m01 + math.hypot(p2, m02) - m02 + U
