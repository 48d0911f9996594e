"""
Closed-form comparison spectra.

These are independent of the self-consistent solver and serve as oracles:
the two-particle Sommerfeld formula with a free angular parameter, the one-body
Klein-Gordon Coulomb spectrum, the Bohr levels, the heavy-nucleus expansion of
the normal-branch level, and the abnormal particleium spectrum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .spectrum import SpectrumLevel

__all__ = [
    "ComparisonRow",
    "connell_energy",
    "connell_epsilon",
    "kg_one_body_energy",
    "bohr_binding",
    "pionic_hydrogen_series",
    "abnormal_particleium_spectrum",
    "abnormal_nonrel",
    "compare_level",
]


def _one_minus_inv_sqrt(t: float) -> float:
    """``1 - (1 + t)^(-1/2)`` without cancellation for small ``t``."""
    return -math.expm1(-0.5 * math.log1p(t))


def connell_energy(m: float, M: float, zalpha: float, n_radial: int, epsilon: float) -> float:
    """
    ``sqrt(m^2 + M^2 + 2 m M / sqrt(1 + (Z alpha)^2 / (n_radial + epsilon + 1)^2))``.

    ``epsilon`` is a free parameter here; :func:`connell_epsilon` gives the
    value that reproduces the normal-branch level of this package.
    """
    if n_radial < 0:
        raise ValueError("n_radial must be >= 0")
    denom = n_radial + epsilon + 1.0
    t = (zalpha / denom) ** 2
    # (m + M)^2 - 2 m M (1 - x), exact rewrite of the same expression
    return math.sqrt((m + M) ** 2 - 2.0 * m * M * _one_minus_inv_sqrt(t))


def connell_epsilon(level: SpectrumLevel) -> float:
    """``epsilon = l - sigma_l``, so that ``n_r + epsilon + 1 = n - sigma_l``."""
    return level.qn.l - level.sigma_l


def kg_one_body_energy(m01: float, zalpha: float, n: int, l: int) -> float:
    """
    Binding energy (positive, MeV) of a spinless particle of mass ``m01`` in a
    static Coulomb field: ``m01 (1 - (1 + (Z alpha)^2/(n - delta_l)^2)^(-1/2))``
    with ``delta_l = l + 1/2 - sqrt((l + 1/2)^2 - (Z alpha)^2)``.
    """
    h = l + 0.5
    radicand = h * h - zalpha * zalpha
    if radicand <= 0:
        raise ValueError(f"supercritical: Z*alpha = {zalpha!r} >= l + 1/2 = {h}")
    delta = zalpha * zalpha / (h + math.sqrt(radicand))
    return m01 * _one_minus_inv_sqrt((zalpha / (n - delta)) ** 2)


def bohr_binding(mu_prime: float, zalpha: float, n: int) -> float:
    """Non-relativistic binding ``mu' (Z alpha)^2 / (2 n^2)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return mu_prime * zalpha * zalpha / (2.0 * n * n)


def pionic_hydrogen_series(level: SpectrumLevel, num_terms: int = 4) -> float:
    """
    Partial sum of the expansion of the normal-branch level in powers of
    ``light/heavy``::

        E = M + m x + (1/2) m (m/M) t x^2 - (1/2) m (m/M)^2 t x^3 + ...

    with ``t = (Z alpha/beta)^2`` and ``x = (1 + t)^(-1/2)``. ``num_terms``
    counts the displayed terms, 2 to 4.
    """
    if not 2 <= num_terms <= 4:
        raise ValueError("num_terms must be 2, 3 or 4")
    system = level.system
    light, heavy = sorted((system.m01, system.m02))
    ratio = light / heavy
    if ratio >= 0.2:
        warnings.warn(
            f"mass ratio {ratio:.3g} is not small; the expansion converges slowly or not at all",
            RuntimeWarning,
            stacklevel=2,
        )
    t = (system.zalpha / level.beta) ** 2
    x = 1.0 / math.sqrt(1.0 + t)
    terms = (
        heavy,
        light * x,
        0.5 * light * ratio * t * x * x,
        -0.5 * light * ratio * ratio * t * x**3,
    )
    # small terms first
    return math.fsum(terms[:num_terms])


def abnormal_particleium_spectrum(
    m_particle: float, n: int, sigma_l: float, alpha: float
) -> float:
    """Abnormal level of an equal-mass Z = 1 pair, ``sqrt(2) m sqrt(1 - (1 + a^2/(n - sigma)^2)^(-1/2))``."""
    return math.sqrt(2.0) * m_particle * math.sqrt(
        _one_minus_inv_sqrt((alpha / (n - sigma_l)) ** 2)
    )


def abnormal_nonrel(m_particle: float, n: int, alpha: float) -> float:
    """Small-coupling limit of the abnormal particleium level, ``alpha m / n``."""
    return alpha * m_particle / n


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    model_energy: float
    solver_energy: float
    gap: float
    gap_order: float | None

    def as_row(self) -> dict:
        return {
            "label": self.label,
            "model_energy": self.model_energy,
            "solver_energy": self.solver_energy,
            "gap": self.gap,
            "gap_order": self.gap_order,
        }


def _gap_order(gap: float, scale: float, alpha: float) -> float | None:
    """Exponent p in ``|gap| ~ scale * alpha^p``; None when undefined."""
    if gap == 0 or scale <= 0 or not 0 < alpha < 1:
        return None
    return round(math.log(abs(gap) / scale) / math.log(alpha), 2)


def _row(label, model, solver, scale, alpha):
    gap = model - solver
    return ComparisonRow(label, model, solver, gap, _gap_order(gap, scale, alpha))


def compare_level(level: SpectrumLevel, series_terms: int = 4) -> list[ComparisonRow]:
    """
    Normal-branch level against every reference model.

    Each model energy is a total energy (MeV); binding-energy models are
    converted with ``m0 - binding``.
    """
    system = level.system
    n, l = level.qn.n, level.qn.l
    g = system.zalpha
    light, heavy = sorted((system.m01, system.m02))
    mu_prime = system.nonrel_reduced_mass
    alpha = system.alpha
    E = level.E_n
    rows = [
        _row(
            "connell",
            connell_energy(system.m01, system.m02, g, level.qn.n_r, connell_epsilon(level)),
            E,
            mu_prime,
            alpha,
        ),
        _row("kg_one_body", system.m0 - kg_one_body_energy(light, g, n, l), E, mu_prime, alpha),
        _row("bohr", system.m0 - bohr_binding(mu_prime, g, n), E, mu_prime, alpha),
    ]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rows.append(
            _row(
                f"series_{series_terms}",
                pionic_hydrogen_series(level, series_terms),
                E,
                mu_prime,
                alpha,
            )
        )
    return rows
