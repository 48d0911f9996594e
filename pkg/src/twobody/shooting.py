"""
Shooting-method eigenvalue solver for the radial equation in ``u = rho R``.

Two equations are supported. The approximate one,

    u'' = (1/4 - A/rho - B/rho^2) u,
    A = beta + d0/(2 beta),  B = (Z alpha)^2 - l(l+1) - 3 d0/2 + d0/beta,

and the full one, whose coefficients carry factors ``(1 + k/rho)`` with
``k = d0/beta``:

    (1 + k/rho)^2 u'' - (1 + k/rho) (2k/rho^2) u'
      + [2k/rho^3 + (beta/rho)(1 + k/(2 rho)) - 1/4 + (1 + k/(2 rho))^2 (Z alpha)^2/rho^2
         + 3 k^2/rho^4 - (1 + k/rho)^2 l(l+1)/rho^2] u = 0

In both, the eigenvalue ``beta`` is the unknown and ``d0`` is held fixed.
Integration runs on a uniform grid in ``x = ln rho`` with classical RK4:
outward from ``rho_min`` using the Frobenius start ``u ~ rho^s``, inward from
``rho_max`` using ``u ~ rho^A exp(-rho/2)``. The two are matched through their
normalised Wronskian at an interior point, whose sign change brackets the
eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import BracketError, IntegrationError
from .radial import exponent_s, node_count

__all__ = [
    "ShootingConfig",
    "EigenResult",
    "BetaComparison",
    "beta_closed_form",
    "shoot_eigenvalue_approx",
    "shoot_eigenvalue_full",
    "compare_beta",
    "full_vs_approx",
]


@dataclass(frozen=True)
class ShootingConfig:
    """
    Parameters
    ----------
    rho_min : float
        Inner end of the grid.
    rho_max : float or None
        Outer end; ``None`` means ``50 + 10 n``.
    steps : int
        Number of RK4 steps in ``ln rho`` across the whole grid.
    match_point : float or None
        Matching radius; ``None`` means twice the eigenvalue estimate.
    bracket : (float, float) or None
        Search interval for ``beta``; ``None`` means estimate +/- 0.5.
    bisection_tol : float
        Relative tolerance on ``beta``.
    full_start_factor : float
        The full equation's regular solution is started at
        ``max(rho_min, full_start_factor * |d0/beta|)``. Below that radius the
        ``(1 + k/rho)`` factors dominate and the indicial behaviour of the full
        equation has no real regular root for ``l = 0``.
    """

    rho_min: float = 1e-6
    rho_max: float | None = None
    steps: int = 20000
    match_point: float | None = None
    bracket: tuple[float, float] | None = None
    bisection_tol: float = 1e-12
    full_start_factor: float = 100.0

    def __post_init__(self):
        if not self.rho_min > 0:
            raise ValueError("rho_min must be positive")
        if self.steps < 10:
            raise ValueError("steps must be >= 10")
        if self.bracket is not None and not self.bracket[0] < self.bracket[1]:
            raise ValueError(f"empty bracket {self.bracket!r}")
        if not self.bisection_tol > 0:
            raise ValueError("bisection_tol must be positive")


@dataclass(frozen=True)
class EigenResult:
    beta_num: float
    mismatch: float  # log-derivative jump d(ln u)/d(rho) at the match point
    node_count: int
    iterations: int
    equation: str
    d0: float


@dataclass(frozen=True)
class BetaComparison:
    beta_closed: float
    beta_num: float
    abs_gap: float
    rel_gap: float
    tol: float
    passed: bool

    def as_row(self) -> dict:
        return {
            "beta_closed": self.beta_closed,
            "beta_num": self.beta_num,
            "abs_gap": self.abs_gap,
            "rel_gap": self.rel_gap,
            "tol": self.tol,
            "passed": self.passed,
        }


def beta_closed_form(l: int, zalpha: float, d0: float, n_r: int, tol: float = 1e-15) -> float:
    """
    Solve ``beta + d0/(2 beta) = n_r + s(beta)`` for ``beta`` at fixed ``d0``.

    This is the quantisation condition of the terminating series; ``s`` depends
    on ``beta`` only through ``d0/beta``, so plain iteration contracts fast.
    """
    beta = n_r + exponent_s(l, zalpha, 0.0)
    for _ in range(200):
        new = n_r + exponent_s(l, zalpha, d0, beta) - d0 / (2.0 * beta)
        if abs(new - beta) <= tol * beta:
            return new
        beta = new
    raise RuntimeError("closed-form beta iteration did not converge")


class _Problem:
    """Coefficient arrays on the log grid for one trial ``beta``."""

    def __init__(self, grid, beta, l, zalpha, d0, full, i_start):
        rho, rho_mid = grid.rho, grid.rho_mid
        g2 = zalpha * zalpha
        L = l * (l + 1)
        if full:
            k = d0 / beta
            window = rho[i_start:]
            if k < 0 and np.any(1.0 + k / window <= 0):
                raise IntegrationError(
                    f"coefficient 1 + d0/(beta rho) vanishes at rho = {-k:.6g} inside the window"
                )
            self.c0, self.c1 = self._full(rho, beta, k, d0, g2, L)
            self.c0m, self.c1m = self._full(rho_mid, beta, k, d0, g2, L)
        else:
            A = beta + d0 / (2.0 * beta)
            B = g2 - L - 1.5 * d0 + d0 / beta
            self.c0 = (-0.25 * rho + A) * rho + B
            self.c1 = np.ones_like(rho)
            self.c0m = (-0.25 * rho_mid + A) * rho_mid + B
            self.c1m = np.ones_like(rho_mid)

    @staticmethod
    def _full(rho, beta, k, d0, g2, L):
        q = 1.0 + k / rho
        h = 1.0 + k / (2.0 * rho)
        bracket = (
            2.0 * k / rho
            + beta * rho
            + 0.5 * d0
            - 0.25 * rho * rho
            + h * h * g2
            + 3.0 * k * k / (rho * rho)
            - q * q * L
        )
        c0 = bracket / (q * q)
        c1 = 1.0 + 2.0 * k / (rho + k)
        return c0, c1


@dataclass(frozen=True)
class _Grid:
    x: np.ndarray
    rho: np.ndarray
    rho_mid: np.ndarray
    h: float


def _make_grid(rho_min, rho_max, steps):
    x = np.linspace(math.log(rho_min), math.log(rho_max), steps + 1)
    h = x[1] - x[0]
    return _Grid(x=x, rho=np.exp(x), rho_mid=np.exp(x[:-1] + 0.5 * h), h=h)


def _rk4(c0, c1, c0m, c1m, h, i_from, i_to, u, w):
    """
    Integrate ``u_x = w, w_x = c1 w - c0 u`` between grid indices.

    Returns the ``u`` samples visited (including both ends) and the final state.
    """
    c0 = c0.tolist()
    c1 = c1.tolist()
    c0m = c0m.tolist()
    c1m = c1m.tolist()
    step = 1 if i_to > i_from else -1
    hs = h * step
    half = 0.5 * hs
    us = [u]
    for i in range(i_from, i_to, step):
        j = i + step
        m = i if step > 0 else j  # midpoint index of the interval
        a0, a1 = c0[i], c1[i]
        b0, b1 = c0m[m], c1m[m]
        e0, e1 = c0[j], c1[j]
        k1u = w
        k1w = a1 * w - a0 * u
        u2 = u + half * k1u
        w2 = w + half * k1w
        k2u = w2
        k2w = b1 * w2 - b0 * u2
        u3 = u + half * k2u
        w3 = w + half * k2w
        k3u = w3
        k3w = b1 * w3 - b0 * u3
        u4 = u + hs * k3u
        w4 = w + hs * k3w
        k4u = w4
        k4w = e1 * w4 - e0 * u4
        u = u + hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        w = w + hs / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        us.append(u)
    return us, u, w


class _Shooter:
    def __init__(self, l, zalpha, d0, n_r, config, full, beta_guess):
        self.l, self.zalpha, self.d0, self.n_r = l, zalpha, d0, n_r
        self.full = full
        n = n_r + l + 1
        rho_max = config.rho_max if config.rho_max is not None else 50.0 + 10.0 * n
        match = config.match_point if config.match_point is not None else 2.0 * beta_guess
        if not config.rho_min < match < rho_max:
            raise ValueError(
                f"need rho_min < match_point < rho_max, got {config.rho_min}, {match}, {rho_max}"
            )
        self.grid = _make_grid(config.rho_min, rho_max, config.steps)
        self.i_match = int(np.argmin(np.abs(self.grid.rho - match)))
        self.i_start = 0
        if full:
            rho_start = max(config.rho_min, config.full_start_factor * abs(d0 / beta_guess))
            self.i_start = int(np.searchsorted(self.grid.rho, rho_start))
        if not 0 <= self.i_start < self.i_match < self.grid.rho.size - 1:
            raise ValueError("integration window too small for the match point")
        self.calls = 0

    def _outward_start(self, beta):
        # Frobenius start of the approximate equation: f = rho^s (1 + b1 rho + ...)
        l, g, d0 = self.l, self.zalpha, self.d0
        s = exponent_s(l, g, d0, beta)
        A = beta + d0 / (2.0 * beta)
        shift = -l * (l + 1) + g * g - 1.5 * d0 + d0 / beta
        b1 = (s - A) / (s * (s + 1.0) + shift)
        c = b1 - 0.5  # u = exp(-rho/2) f
        rho = self.grid.rho[self.i_start]
        lead = rho**s
        return lead * (1.0 + c * rho), lead * (s + (s + 1.0) * c * rho)

    def _inward_start(self, beta, scale=0.0):
        rho = self.grid.rho[-1]
        A = beta + self.d0 / (2.0 * beta)
        u = math.exp(A * math.log(rho) - 0.5 * rho + scale)
        return u, u * (A - 0.5 * rho)

    def integrate(self, beta):
        self.calls += 1
        prob = _Problem(self.grid, beta, self.l, self.zalpha, self.d0, self.full, self.i_start)
        args = (prob.c0, prob.c1, prob.c0m, prob.c1m, self.grid.h)
        for attempt, scale in enumerate((0.0, -300.0)):
            u0, w0 = self._outward_start(beta)
            if attempt:
                u0, w0 = u0 * 1e-150, w0 * 1e-150
            out, uo, wo = _rk4(*args, self.i_start, self.i_match, u0, w0)
            ui0, wi0 = self._inward_start(beta, scale)
            inn, ui, wi = _rk4(*args, self.grid.rho.size - 1, self.i_match, ui0, wi0)
            if all(math.isfinite(v) for v in (uo, wo, ui, wi)):
                return out, inn, (uo, wo, ui, wi)
        raise IntegrationError(f"integration overflow at beta = {beta!r} after rescaling")

    def mismatch_fn(self, beta):
        _, _, (uo, wo, ui, wi) = self.integrate(beta)
        return (wo * ui - wi * uo) / math.sqrt((uo * uo + wo * wo) * (ui * ui + wi * wi))

    def solve(self, bracket, tol):
        lo, hi = bracket
        f_lo, f_hi = self.mismatch_fn(lo), self.mismatch_fn(hi)
        if f_lo == 0:
            beta = lo
        elif f_hi == 0:
            beta = hi
        elif f_lo * f_hi > 0:
            raise BracketError(
                f"no sign change of the matching function on beta in [{lo}, {hi}]"
            )
        else:
            beta = optimize.brentq(
                self.mismatch_fn, lo, hi, xtol=tol * max(1.0, abs(lo)), rtol=4 * np.finfo(float).eps
            )
        out, inn, (uo, wo, ui, wi) = self.integrate(beta)
        rho_m = self.grid.rho[self.i_match]
        mismatch = (wo / uo - wi / ui) / rho_m
        # join the two halves with a common sign before counting nodes
        sign = 1.0 if (uo > 0) == (ui > 0) else -1.0
        samples = np.concatenate([np.asarray(out), sign * np.asarray(inn[::-1][1:])])
        return EigenResult(
            beta_num=float(beta),
            mismatch=float(mismatch),
            node_count=node_count(samples),
            iterations=self.calls,
            equation="full" if self.full else "approx",
            d0=self.d0,
        )


def _default_bracket(config, estimate):
    return config.bracket if config.bracket is not None else (estimate - 0.5, estimate + 0.5)


def shoot_eigenvalue_approx(
    l: int, zalpha: float, d0: float, n_r: int, config: ShootingConfig | None = None
) -> EigenResult:
    """
    Eigenvalue ``beta`` of the approximate radial equation with ``n_r`` nodes.

    The default bracket is centred on the ``d0 = 0`` estimate ``n_r + s``,
    so it does not depend on the closed form being checked.
    """
    config = config or ShootingConfig()
    estimate = n_r + exponent_s(l, zalpha, 0.0)
    shooter = _Shooter(l, zalpha, d0, n_r, config, full=False, beta_guess=estimate)
    return shooter.solve(_default_bracket(config, estimate), config.bisection_tol)


def shoot_eigenvalue_full(
    l: int,
    zalpha: float,
    d0: float,
    beta_hint: float,
    n_r: int,
    config: ShootingConfig | None = None,
) -> EigenResult:
    """
    Eigenvalue of the full radial equation.

    ``beta`` enters the coefficients both directly and through ``k = d0/beta``;
    each trial evaluation uses the trial value for both.
    """
    config = config or ShootingConfig()
    shooter = _Shooter(l, zalpha, d0, n_r, config, full=True, beta_guess=beta_hint)
    return shooter.solve(_default_bracket(config, beta_hint), config.bisection_tol)


def compare_beta(beta_closed: float, result: EigenResult | float, tol: float = 1e-8) -> BetaComparison:
    beta_num = result.beta_num if isinstance(result, EigenResult) else float(result)
    gap = abs(beta_num - beta_closed)
    rel = gap / abs(beta_closed) if beta_closed else gap
    return BetaComparison(beta_closed, beta_num, gap, rel, tol, rel <= tol)


def full_vs_approx(approx: EigenResult, full: EigenResult) -> dict:
    """Relative gap between the two equations and the constant ``C = gap / d0``."""
    rel = abs(full.beta_num - approx.beta_num) / approx.beta_num
    d0 = approx.d0
    return {
        "beta_approx": approx.beta_num,
        "beta_full": full.beta_num,
        "rel_gap": rel,
        "d0": d0,
        "C": rel / abs(d0) if d0 else (0.0 if rel == 0 else math.inf),
    }

