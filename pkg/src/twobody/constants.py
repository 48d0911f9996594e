"""
Physical constants and the particle catalog.

All masses are carried as rest energies in MeV, so a mass ``m`` and the energy
``m c^2`` are the same number. Lengths are in fm; ``alpha`` is dimensionless.

File formats
------------
Catalog files are line oriented::

    # comment
    name  rest_energy_MeV  charge  spin

Constants files hold ``key=value`` lines with the keys ``alpha`` and
``hbar_c``. Both formats accept ``#`` comments and blank lines.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import CatalogError, ParticleNotFoundError

__all__ = [
    "PhysicalConstants",
    "ParticleSpec",
    "CATALOG_ENV",
    "CONSTANTS_ENV",
    "load_catalog",
    "write_catalog",
    "lookup_particle",
    "load_constants",
    "default_catalog",
    "default_constants",
    "default_catalog_path",
    "default_constants_path",
]

CATALOG_ENV = "TWOBODY_CATALOG"
CONSTANTS_ENV = "TWOBODY_CONSTANTS"


@dataclass(frozen=True)
class PhysicalConstants:
    """Fine-structure constant and hbar*c (MeV fm)."""

    alpha: float
    hbar_c: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 0.01):
            raise CatalogError(f"alpha={self.alpha!r} outside sanity range (0, 0.01)")
        if not self.hbar_c > 0:
            raise CatalogError(f"hbar_c must be positive, got {self.hbar_c!r}")


@dataclass(frozen=True)
class ParticleSpec:
    name: str
    rest_energy: float  # MeV
    charge: int
    spin: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.name or any(c.isspace() for c in self.name):
            raise CatalogError(f"invalid particle name {self.name!r}")
        if not self.rest_energy > 0:
            raise CatalogError(
                f"{self.name}: rest energy must be positive, got {self.rest_energy!r}"
            )
        if self.spin < 0 or (2 * self.spin).denominator != 1:
            raise CatalogError(f"{self.name}: spin must be a non-negative half-integer")


def _data_file(name: str) -> Path:
    return Path(str(resources.files("twobody") / "data" / name))


def default_catalog_path() -> Path:
    """Catalog path, honouring the ``TWOBODY_CATALOG`` environment override."""
    env = os.environ.get(CATALOG_ENV)
    return Path(env) if env else _data_file("particles.txt")


def default_constants_path() -> Path:
    env = os.environ.get(CONSTANTS_ENV)
    return Path(env) if env else _data_file("constants.txt")


def _content_lines(path: Path) -> Iterable[tuple[int, str]]:
    path = Path(path)
    if not path.is_file():
        raise CatalogError(f"no such file: {path}")
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def _parse_spin(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CatalogError(f"bad spin {text!r}") from None


def load_catalog(path) -> dict[str, ParticleSpec]:
    """
    Read a particle catalog file.

    Returns a dict keyed by particle name, in file order. An empty file gives
    an empty catalog.

    Raises
    ------
    CatalogError
        Missing file, malformed line, duplicate name or non-positive rest energy.
    """
    catalog: dict[str, ParticleSpec] = {}
    for lineno, line in _content_lines(path):
        fields = line.split()
        if len(fields) != 4:
            raise CatalogError(
                f"{path}:{lineno}: expected 'name rest_energy charge spin', got {line!r}"
            )
        name, energy, charge, spin = fields
        try:
            rest_energy = float(energy)
            charge_value = int(charge)
        except ValueError:
            raise CatalogError(f"{path}:{lineno}: non-numeric field in {line!r}") from None
        if name in catalog:
            raise CatalogError(f"{path}:{lineno}: duplicate particle name {name!r}")
        try:
            catalog[name] = ParticleSpec(name, rest_energy, charge_value, _parse_spin(spin))
        except CatalogError as exc:
            raise CatalogError(f"{path}:{lineno}: {exc}") from None
    return catalog


def write_catalog(catalog: Mapping[str, ParticleSpec] | Iterable[ParticleSpec], path) -> None:
    """Write a catalog in the format read by :func:`load_catalog` (lossless)."""
    specs = catalog.values() if isinstance(catalog, Mapping) else catalog
    lines = ["# name  rest_energy_MeV  charge  spin"]
    for p in specs:
        lines.append(f"{p.name} {p.rest_energy!r} {p.charge:d} {p.spin}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def lookup_particle(catalog: Mapping[str, ParticleSpec], name: str) -> ParticleSpec:
    try:
        return catalog[name]
    except KeyError:
        known = ", ".join(sorted(catalog)) or "<empty catalog>"
        raise ParticleNotFoundError(f"unknown particle {name!r}; known: {known}") from None


def load_constants(path) -> PhysicalConstants:
    """Parse a ``key=value`` constants file holding ``alpha`` and ``hbar_c``."""
    values: dict[str, float] = {}
    for lineno, line in _content_lines(path):
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in ("alpha", "hbar_c"):
            raise CatalogError(f"{path}:{lineno}: expected alpha=<float> or hbar_c=<float>")
        if key in values:
            raise CatalogError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = float(value)
        except ValueError:
            raise CatalogError(f"{path}:{lineno}: bad float {value.strip()!r}") from None
    missing = {"alpha", "hbar_c"} - values.keys()
    if missing:
        raise CatalogError(f"{path}: missing {', '.join(sorted(missing))}")
    return PhysicalConstants(alpha=values["alpha"], hbar_c=values["hbar_c"])


def default_catalog() -> dict[str, ParticleSpec]:
    return load_catalog(default_catalog_path())


def default_constants() -> PhysicalConstants:
    return load_constants(default_constants_path())
