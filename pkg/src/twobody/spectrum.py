"""
Self-consistent energy levels of a spin-zero two-body Coulomb system.

The level is parametrised by the quantum-defect-like shift ``sigma_l`` in
``beta = n - sigma_l``. Given ``sigma_l`` every other quantity follows in closed
form::

    x       = (1 + (Z alpha)^2 / beta^2) ** -1/2
    m       = sqrt(m01^2 +/- 2 m01 m02 x + m02^2)      (+ normal, - abnormal)
    mu0     = 2 m01 m02 / (m0 + m)
    mu      = +/- mu0 x
    D       = mu (m0 + m) / (2 m^2),   d0 = 2 (Z alpha)^2 D

and ``sigma_l`` itself must reproduce::

    sigma_l = l + 1/2 + d0/(2 beta) - sqrt((l + 1/2)^2 - (Z alpha)^2 + 3 d0/2 - d0/beta)

:func:`solve_level` iterates that map to its fixed point, starting from the
``d0 = 0`` value.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import TwoBodySystem
from .errors import ConvergenceError, NegativeRadicandError, SupercriticalCouplingError

__all__ = [
    "Branch",
    "D0Policy",
    "QuantumNumbers",
    "SolverConfig",
    "SpectrumLevel",
    "sigma_l_zeroth",
    "sigma_update",
    "energy_normal",
    "energy_abnormal",
    "residual_quadratic_53",
    "binding_from_beta",
    "level_from_sigma",
    "solve_level",
    "iter_quantum_numbers",
]


class Branch(enum.Enum):
    NORMAL = "normal"
    ABNORMAL = "abnormal"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.NORMAL else -1


class D0Policy(enum.Enum):
    """How ``d0`` is treated on the abnormal branch."""

    FREEZE_ZERO = "freeze-zero"
    FULL_ITERATION = "full-iteration"


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    n: int
    l: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        if int(self.l) != self.l or not 0 <= self.l <= self.n - 1:
            raise ValueError(f"l must satisfy 0 <= l <= n-1, got l={self.l!r} for n={self.n}")

    @property
    def n_r(self) -> int:
        """Radial quantum number, ``n - l - 1``."""
        return self.n - self.l - 1


@dataclass(frozen=True)
class SolverConfig:
    rel_tol: float = 1e-14
    max_iter: int = 200
    abnormal_d0_policy: D0Policy = D0Policy.FREEZE_ZERO
    damping: float = 1.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")


@dataclass(frozen=True)
class SpectrumLevel:
    """One converged level. Masses and energies in MeV."""

    qn: QuantumNumbers
    branch: Branch
    sigma_l: float
    beta: float
    d0: float
    D: float
    mu0: float
    mu: float
    m: float
    E_n: float
    Eprime: float
    iterations: int
    residual_53: float
    converged: bool
    system: TwoBodySystem

    @property
    def binding_energy(self) -> float:
        return -self.Eprime

    def as_row(self) -> dict:
        """Flat mapping with stable keys, for tabular output."""
        return {
            "n": self.qn.n,
            "l": self.qn.l,
            "n_r": self.qn.n_r,
            "branch": self.branch.value,
            "sigma_l": self.sigma_l,
            "beta": self.beta,
            "d0": self.d0,
            "D": self.D,
            "mu0": self.mu0,
            "mu": self.mu,
            "m": self.m,
            "E_n": self.E_n,
            "Eprime": self.Eprime,
            "iterations": self.iterations,
            "residual_53": self.residual_53,
            "converged": self.converged,
        }


def _check_subcritical(l: int, zalpha: float) -> float:
    radicand = (l + 0.5) ** 2 - zalpha * zalpha
    if radicand <= 0:
        raise SupercriticalCouplingError(zalpha, l)
    return radicand


def sigma_l_zeroth(l: int, zalpha: float) -> float:
    """
    ``l + 1/2 - sqrt((l + 1/2)^2 - (Z alpha)^2)``, evaluated without cancellation.

    Raises
    ------
    SupercriticalCouplingError
        When ``Z alpha >= l + 1/2``.
    """
    radicand = _check_subcritical(l, zalpha)
    return zalpha * zalpha / (l + 0.5 + math.sqrt(radicand))


def sigma_update(l: int, zalpha: float, beta: float, d0: float) -> tuple[float, float]:
    """
    One evaluation of the ``sigma_l`` relation at given ``beta`` and ``d0``.

    Returns ``(sigma, radicand)``; ``sigma`` is NaN when the radicand is
    negative so the caller can decide how to report it.
    """
    g2 = zalpha * zalpha
    h = l + 0.5
    radicand = h * h - g2 + 1.5 * d0 - d0 / beta
    if radicand < 0:
        return math.nan, radicand
    # h - sqrt(radicand) rewritten as (h^2 - radicand)/(h + sqrt(radicand))
    sigma = d0 / (2.0 * beta) + (g2 - 1.5 * d0 + d0 / beta) / (h + math.sqrt(radicand))
    return sigma, radicand


def _coupling_factor(zalpha: float, beta: float) -> tuple[float, float]:
    """``x = (1 + t)^(-1/2)`` and ``1 - x`` for ``t = (Z alpha / beta)^2``."""
    t = (zalpha / beta) ** 2
    half_log = -0.5 * math.log1p(t)
    return math.exp(half_log), -math.expm1(half_log)


def _masses(m01: float, m02: float, zalpha: float, beta: float, branch: Branch):
    """System mass and E' for one branch, both without catastrophic cancellation."""
    x, omx = _coupling_factor(zalpha, beta)
    p = m01 * m02
    m0 = m01 + m02
    if branch is Branch.NORMAL:
        m = math.sqrt(m0 * m0 - 2.0 * p * omx)
        eprime = -2.0 * p * omx / (m + m0)
    else:
        m = math.sqrt((m01 - m02) ** 2 + 2.0 * p * omx)
        eprime = -2.0 * p * (1.0 + x) / (m + m0)
    return x, omx, m, eprime


def energy_normal(m01: float, m02: float, zalpha: float, beta: float) -> float:
    """Normal-branch level ``sqrt(m01^2 + 2 m01 m02 x + m02^2)``."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    return _masses(m01, m02, zalpha, beta, Branch.NORMAL)[2]


def energy_abnormal(m01: float, m02: float, zalpha: float, beta: float) -> float:
    """Abnormal-branch level ``sqrt(m01^2 - 2 m01 m02 x + m02^2)``."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    x, omx = _coupling_factor(zalpha, beta)
    radicand = (m01 - m02) ** 2 + 2.0 * m01 * m02 * omx
    assert radicand >= 0, radicand
    return math.sqrt(radicand)


def residual_quadratic_53(Eabs: float, mu0: float, zalpha: float, beta: float) -> float:
    """
    Relative residual of the quadratic satisfied by the binding energy,
    ``(g^2 + beta^2) E^2 - 2 mu0 (g^2 + beta^2) E + mu0^2 g^2`` with ``g = Z alpha``,
    normalised by the largest of the three terms.

    On the normal branch the largest term is ``mu0^2 g^2`` to within
    ``O(g^2/beta^2)``. On the abnormal branch the quadratic and linear terms are
    ``~4 beta^2 mu0^2`` and cancel, so normalising by ``mu0^2 g^2`` there would
    only measure rounding in ``Eabs``.
    """
    g2 = zalpha * zalpha
    k = g2 + beta * beta
    terms = (k * Eabs * Eabs, -2.0 * mu0 * k * Eabs, mu0 * mu0 * g2)
    scale = max(abs(t) for t in terms)
    if scale == 0:
        return 0.0
    return abs(terms[0] + terms[1] + terms[2]) / scale


def binding_from_beta(mu: float, mu0: float, zalpha: float, beta: float) -> float:
    """``|E'| = (Z alpha)^2 mu^2 / ((mu0 + mu) beta^2)``."""
    denom = (mu0 + mu) * beta * beta
    if denom == 0:
        raise ZeroDivisionError("mu0 + mu = 0 or beta = 0")
    return zalpha * zalpha * mu * mu / denom


def level_from_sigma(
    system: TwoBodySystem,
    qn: QuantumNumbers,
    branch: Branch,
    sigma: float,
    freeze_d0: bool = False,
) -> dict:
    """
    Every derived quantity of a level at a given ``sigma_l``.

    With ``freeze_d0`` the returned ``d0`` is 0 regardless of ``D`` (the
    abnormal-branch default).
    """
    beta = qn.n - sigma
    if not beta > 0:
        raise ValueError(f"beta = n - sigma_l = {beta!r} is not positive")
    g = system.zalpha
    x, omx, m, eprime = _masses(system.m01, system.m02, g, beta, branch)
    m0 = system.m0
    mu0 = 2.0 * system.m01 * system.m02 / (m0 + m)
    mu = branch.sign * mu0 * x
    D = mu * (m0 + m) / (2.0 * m * m) if m > 0 else math.copysign(math.inf, mu)
    d0 = 0.0 if (freeze_d0 or g == 0) else 2.0 * g * g * D
    return dict(sigma_l=sigma, beta=beta, d0=d0, D=D, mu0=mu0, mu=mu, m=m, E_n=m, Eprime=eprime)


def solve_level(
    system: TwoBodySystem,
    qn: QuantumNumbers,
    branch: Branch = Branch.NORMAL,
    config: SolverConfig | None = None,
) -> SpectrumLevel:
    """
    Solve for one level by fixed-point iteration on ``sigma_l``.

    Each step recomputes ``beta``, ``x``, ``m``, ``mu0``, ``mu``, ``D`` and
    ``d0`` from the current iterate and re-evaluates the ``sigma_l`` relation
    with the previous ``beta`` in both of its slots. The reported record is
    built from the final iterate, so all of its fields are mutually consistent.

    Raises
    ------
    SupercriticalCouplingError
        ``Z alpha >= l + 1/2``.
    NegativeRadicandError
        The square root in the update went negative (typical of the abnormal
        branch under ``D0Policy.FULL_ITERATION``).
    ConvergenceError
        No fixed point within ``config.max_iter`` steps, or beta <= 0.
    """
    config = config or SolverConfig()
    g = system.zalpha
    l = qn.l
    sigma = sigma_l_zeroth(l, g)
    freeze = branch is Branch.ABNORMAL and config.abnormal_d0_policy is D0Policy.FREEZE_ZERO

    iterations = 0
    converged = False
    step = math.inf
    if freeze:
        # d0 == 0 makes the zeroth-order value the exact fixed point
        converged = True
    else:
        for iterations in range(1, config.max_iter + 1):
            beta = qn.n - sigma
            if not beta > 0:
                raise ConvergenceError(
                    f"beta = {beta!r} <= 0 at iteration {iterations}", iterations, step
                )
            d0 = level_from_sigma(system, qn, branch, sigma)["d0"]
            new, radicand = sigma_update(l, g, beta, d0)
            if math.isnan(new):
                raise NegativeRadicandError(sigma, radicand, iterations)
            step = new - sigma
            sigma = sigma + config.damping * step
            if abs(step) <= config.rel_tol * max(1.0, abs(sigma)):
                converged = True
                break
        if not converged:
            raise ConvergenceError(
                f"sigma_l iteration for n={qn.n}, l={l} ({branch.value}) did not converge "
                f"in {config.max_iter} steps; last step {step:.3e}",
                iterations,
                step,
            )

    fields = level_from_sigma(system, qn, branch, sigma, freeze_d0=freeze)
    residual = residual_quadratic_53(-fields["Eprime"], fields["mu0"], g, fields["beta"])
    return SpectrumLevel(
        qn=qn,
        branch=branch,
        iterations=iterations,
        residual_53=residual,
        converged=converged,
        system=system,
        **fields,
    )


def iter_quantum_numbers(n_max: int, l_values=None):
    """``(n, l)`` pairs in ascending order, optionally restricted to ``l_values``."""
    for n in range(1, n_max + 1):
        for l in range(n):
            if l_values is None or l in l_values:
                yield QuantumNumbers(n, l)

