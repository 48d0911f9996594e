"""Exception hierarchy shared by every module in the package."""


class TwoBodyError(Exception):
    """Base class for all errors raised by :mod:`twobody`."""


class CatalogError(TwoBodyError, ValueError):
    """Malformed, duplicated or otherwise invalid catalog/constants data."""


class ParticleNotFoundError(CatalogError, KeyError):
    """Requested particle name is not present in the catalog."""

    def __str__(self):
        return str(self.args[0]) if self.args else "particle not found"


class InconsistentStateError(TwoBodyError, ValueError):
    """A (system mass, E') pair violates ``m = m0 + E'``."""


class SupercriticalCouplingError(TwoBodyError, ValueError):
    """Coupling too strong for a real solution: ``Z*alpha >= l + 1/2``.

    Attributes
    ----------
    zalpha : float
        The offending coupling ``Z*alpha``.
    l : int
        Orbital quantum number.
    """

    def __init__(self, zalpha, l, detail=""):
        self.zalpha = zalpha
        self.l = l
        self.critical = l + 0.5
        msg = (
            f"supercritical coupling: Z*alpha = {zalpha:.10g} >= {self.critical:g} "
            f"(critical Z*alpha = l + 1/2 for l = {l})"
        )
        if detail:
            msg += f"; {detail}"
        super().__init__(msg)


class NegativeRadicandError(TwoBodyError, ArithmeticError):
    """The square root in the sigma_l update went negative mid-iteration."""

    def __init__(self, sigma, radicand, iteration):
        self.sigma = sigma
        self.radicand = radicand
        self.iteration = iteration
        super().__init__(
            f"negative radicand {radicand:.6g} in sigma_l update at iteration "
            f"{iteration} (iterate sigma_l = {sigma!r})"
        )


class ConvergenceError(TwoBodyError, RuntimeError):
    """Fixed-point iteration did not converge within the iteration cap."""

    def __init__(self, message, iterations=None, last_step=None):
        self.iterations = iterations
        self.last_step = last_step
        super().__init__(message)


class DegenerateRecurrenceError(TwoBodyError, ZeroDivisionError):
    """A Frobenius recurrence denominator vanished."""


class TailGuardError(TwoBodyError, ValueError):
    """Radial grid stops before the exponential tail has decayed."""


class BracketError(TwoBodyError, ValueError):
    """Eigenvalue bracket does not enclose a sign change."""


class IntegrationError(TwoBodyError, ArithmeticError):
    """ODE integration overflowed or hit a coefficient singularity."""
