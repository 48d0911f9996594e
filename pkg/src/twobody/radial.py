"""
Radial wavefunctions from the terminating Frobenius series.

With ``rho = alpha' r`` the radial function is

    R(rho) = rho^-1 exp(-rho/2) f(rho),    f(rho) = sum_nu b_nu rho^(s + nu)

where ``s`` is the regular root of the indicial equation and the ``b_nu``
follow a two-term recurrence that terminates at ``nu = n_r`` exactly when the
level is quantised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DegenerateRecurrenceError, SupercriticalCouplingError, TailGuardError
from .spectrum import SpectrumLevel

__all__ = [
    "SeriesSolution",
    "RadialScale",
    "RadialWavefunction",
    "exponent_s",
    "recurrence_coeffs",
    "series_for_level",
    "radial_scale",
    "radial_wavefunction",
    "node_count",
    "tail_fraction",
    "TAIL_TOLERANCE",
]

#: largest tolerated fraction of probability beyond the last grid point
TAIL_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SeriesSolution:
    s: float
    coeffs: tuple[float, ...]
    beta: float
    d0: float
    zalpha: float
    l: int
    next_coeff: float  # b_{n_r+1}; zero for a quantised level

    @property
    def n_r(self) -> int:
        return len(self.coeffs) - 1

    @property
    def termination_ratio(self) -> float:
        """``|b_{n_r+1}| / max|b_nu|``."""
        return abs(self.next_coeff) / max(abs(b) for b in self.coeffs)

    def f(self, rho):
        """Evaluate ``sum b_nu rho^(s+nu)``."""
        rho = np.asarray(rho, dtype=float)
        poly = np.polynomial.polynomial.polyval(rho, self.coeffs)
        return rho**self.s * poly


def _indicial_radicand(l, zalpha, d0, beta):
    return (l + 0.5) ** 2 - zalpha * zalpha + 1.5 * d0 - d0 / beta


def exponent_s(l: int, zalpha: float, d0: float = 0.0, beta: float = 1.0) -> float:
    """
    Regular root ``s = 1/2 + sqrt((l+1/2)^2 - (Z alpha)^2 + 3 d0/2 - d0/beta)``.

    ``s > 1/2`` is required (square integrability of ``R r`` at the origin);
    ``s >= 1`` is not, since for ``l = 0`` and any coupling the root lies below 1.
    """
    radicand = _indicial_radicand(l, zalpha, d0, beta)
    if radicand <= 0:
        raise SupercriticalCouplingError(
            zalpha, l, f"indicial radicand {radicand:.6g} <= 0 with d0={d0:.6g}, beta={beta:.6g}"
        )
    return 0.5 + math.sqrt(radicand)


def recurrence_coeffs(
    s: float, beta: float, d0: float, zalpha: float, l: int, n_r: int
) -> SeriesSolution:
    """
    Coefficients ``b_0 = 1, ..., b_{n_r}`` and the would-be ``b_{n_r+1}``::

        b_{nu+1} = (s + nu - beta - d0/(2 beta))
                   / ((s+nu)(s+nu+1) - l(l+1) + (Z alpha)^2 - 3 d0/2 + d0/beta) * b_nu
    """
    if n_r < 0:
        raise ValueError("n_r must be non-negative")
    a_eff = beta + d0 / (2.0 * beta)
    shift = -l * (l + 1) + zalpha * zalpha - 1.5 * d0 + d0 / beta
    coeffs = [1.0]
    b = 1.0
    for nu in range(n_r + 1):
        t = s + nu
        denom = t * (t + 1.0) + shift
        if denom == 0 or abs(denom) < 1e-14 * (t * (t + 1.0) + abs(shift)):
            raise DegenerateRecurrenceError(
                f"recurrence denominator vanishes at nu={nu} (s={s!r}, l={l}, d0={d0!r})"
            )
        b = (t - a_eff) / denom * b
        if nu < n_r:
            coeffs.append(b)
    return SeriesSolution(
        s=s, coeffs=tuple(coeffs), beta=beta, d0=d0, zalpha=zalpha, l=l, next_coeff=b
    )


def series_for_level(level: SpectrumLevel) -> SeriesSolution:
    """Frobenius solution built from a converged level's ``beta`` and ``d0``."""
    g = level.system.zalpha
    s = exponent_s(level.qn.l, g, level.d0, level.beta)
    return recurrence_coeffs(s, level.beta, level.d0, g, level.qn.l, level.qn.n_r)


@dataclass(frozen=True)
class RadialScale:
    """
    Map between ``r`` (fm) and the dimensionless ``rho``.

    ``alpha_prime`` comes from the binding energy,
    ``(m0 + m)/m * sqrt((mu0 + mu)|E'|) / hbar_c``; ``alpha_prime_from_a0`` is the
    equivalent ``2 Z / (beta a0)`` with ``a0 = 2m/(m0 + m) * hbar_c/(|mu| alpha)``.
    The two agree only when the level satisfies its quantisation condition.
    """

    alpha_prime: float
    a0: float
    beta: float
    alpha_prime_from_a0: float

    @property
    def mismatch(self) -> float:
        return abs(self.alpha_prime - self.alpha_prime_from_a0) / self.alpha_prime

    def rho(self, r):
        return self.alpha_prime * np.asarray(r, dtype=float)


def radial_scale(level: SpectrumLevel, hbar_c: float) -> RadialScale:
    system = level.system
    if system.alpha == 0 or level.Eprime == 0:
        raise ValueError("no bound state without coupling: radial scale undefined")
    m0, m = system.m0, level.m
    alpha_prime = (m0 + m) / m * math.sqrt((level.mu0 + level.mu) * -level.Eprime) / hbar_c
    a0 = 2.0 * m / (m0 + m) * hbar_c / (abs(level.mu) * system.alpha)
    return RadialScale(
        alpha_prime=alpha_prime,
        a0=a0,
        beta=level.beta,
        alpha_prime_from_a0=2.0 * system.Z / (level.beta * a0),
    )


def _gamma_moments(series: SeriesSolution, rho_max: float | None):
    """Sum of b_i b_j Gamma(2s+i+j+1) over [0, inf) and over [rho_max, inf)."""
    b = np.asarray(series.coeffs)
    i, j = np.meshgrid(np.arange(len(b)), np.arange(len(b)), indexing="ij")
    p = 2.0 * series.s + i + j + 1.0
    # log-space: Gamma grows fast, and the ratio is all that matters
    lg = special.gammaln(p)
    shift = lg.max()
    weights = np.outer(b, b) * np.exp(lg - shift)
    total = weights.sum()
    tail = None if rho_max is None else (weights * special.gammaincc(p, rho_max)).sum()
    return total, tail


def tail_fraction(series: SeriesSolution, rho_max: float) -> float:
    """Exact fraction of ``int |R|^2 r^2 dr`` lying beyond ``rho_max``."""
    total, tail = _gamma_moments(series, rho_max)
    return abs(tail / total)


@dataclass(frozen=True)
class RadialWavefunction:
    r: np.ndarray  # fm
    rho: np.ndarray
    R: np.ndarray  # fm^-3/2
    nodes: int
    tail: float


def radial_wavefunction(
    level: SpectrumLevel,
    series: SeriesSolution,
    r_grid,
    hbar_c: float,
    tail_tol: float = TAIL_TOLERANCE,
) -> RadialWavefunction:
    """
    Sample ``R(r)`` on ``r_grid`` (fm) and normalise it so that the trapezoid
    estimate of ``int |R|^2 r^2 dr`` over the grid is 1.

    Raises
    ------
    TailGuardError
        If more than ``tail_tol`` of the probability lies beyond the grid.
    """
    r = np.asarray(r_grid, dtype=float)
    if r.ndim != 1 or r.size < 2:
        raise ValueError("r_grid must be a 1-d array with at least two points")
    if r[0] <= 0 or np.any(np.diff(r) <= 0):
        raise ValueError("r_grid must be positive and strictly increasing")

    scale = radial_scale(level, hbar_c)
    rho = scale.rho(r)
    tail = tail_fraction(series, rho[-1])
    if tail > tail_tol:
        needed = rho[-1]
        while tail_fraction(series, needed) > tail_tol:
            needed *= 1.25
        raise TailGuardError(
            f"grid ends at r = {r[-1]:.6g} fm (rho = {rho[-1]:.4g}) but {tail:.3e} of the "
            f"probability lies beyond it; extend r_max to at least "
            f"{needed / scale.alpha_prime:.6g} fm (rho = {needed:.4g})"
        )

    R = np.exp(-rho / 2.0) * series.f(rho) / rho
    norm = np.trapezoid(R * R * r * r, r) if hasattr(np, "trapezoid") else np.trapz(R * R * r * r, r)
    R = R / math.sqrt(norm)
    return RadialWavefunction(r=r, rho=rho, R=R, nodes=node_count(R), tail=tail)


def node_count(samples) -> int:
    """Strict sign changes between consecutive nonzero samples."""
    v = np.asarray(samples, dtype=float)
    signs = np.sign(v[v != 0])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
