"""
Command-line interface.

Usage::

    twobody spectrum pi+ pi- --Z 1 --n-max 3 --branch normal
    twobody verify electron proton --n 1 --l 0 --which both
    twobody compare pi- deuteron --n 2 --l 1 --format csv
    twobody wavefunction electron proton --n 3 --l 1 --format json

Exit codes: 0 success, 1 usage or configuration error, 2 computation error
(including a verification outside tolerance).
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys

import click
import numpy as np

from .constants import (
    CATALOG_ENV,
    CONSTANTS_ENV,
    default_catalog_path,
    default_constants_path,
    load_catalog,
    load_constants,
    lookup_particle,
)
from .core import TwoBodySystem
from .errors import CatalogError, TwoBodyError
from .radial import radial_scale, radial_wavefunction, series_for_level
from .reference import compare_level
from .shooting import (
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
    iter_quantum_numbers,
    solve_level,
)

__all__ = ["cli", "main", "format_table", "binding_display"]

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2
SIG_DIGITS = 12
FORMATS = ("pretty", "csv", "json")


def _fmt_float(v: float) -> str:
    return f"{v:.{SIG_DIGITS}g}"


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return float(_fmt_float(v)) if math.isfinite(v) else None
    return v


def _text_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(float(v))
    return str(v)


def binding_display(energy_mev: float) -> str:
    """Energy as text in eV, keV or MeV, whichever suits its magnitude."""
    a = abs(energy_mev)
    if a == 0:
        return "0 eV"
    if a < 1e-3:
        return f"{_fmt_float(energy_mev * 1e6)} eV"
    if a < 1.0:
        return f"{_fmt_float(energy_mev * 1e3)} keV"
    return f"{_fmt_float(energy_mev)} MeV"


def format_table(rows: list[dict], fmt: str, columns: list[str], comments=()) -> str:
    """Render rows as csv, json (flat array of objects) or aligned text."""
    if fmt == "json":
        data = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        return json.dumps(data, indent=2) + "\n"
    lines = [f"# {c}" for c in comments]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_text_value(r.get(c)) for c in columns])
        return "".join(line + "\n" for line in lines) + buf.getvalue()
    cells = [[_text_value(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    out = lines + ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    out += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(out) + "\n"


class _Env:
    def __init__(self, catalog_path, constants_path, alpha):
        self.catalog_path = catalog_path
        self.constants_path = constants_path
        self.alpha_override = alpha
        self._catalog = None
        self._constants = None

    @property
    def catalog(self):
        if self._catalog is None:
            self._catalog = load_catalog(self.catalog_path or default_catalog_path())
        return self._catalog

    @property
    def constants(self):
        if self._constants is None:
            self._constants = load_constants(self.constants_path or default_constants_path())
        return self._constants

    @property
    def alpha(self) -> float:
        return self.constants.alpha if self.alpha_override is None else self.alpha_override

    def system(self, p1: str, p2: str, Z: int) -> TwoBodySystem:
        a = lookup_particle(self.catalog, p1)
        b = lookup_particle(self.catalog, p2)
        return TwoBodySystem(a.rest_energy, b.rest_energy, Z, self.alpha)


format_option = click.option(
    "--format", "fmt", type=click.Choice(FORMATS), default="pretty", show_default=True
)


def _emit(text: str) -> None:
    click.echo(text, nl=False)


@click.group()
@click.option(
    "--catalog",
    type=click.Path(dir_okay=False),
    envvar=CATALOG_ENV,
    help=f"Particle catalog file (env {CATALOG_ENV}).",
)
@click.option(
    "--constants",
    type=click.Path(dir_okay=False),
    envvar=CONSTANTS_ENV,
    help=f"Constants file with alpha and hbar_c (env {CONSTANTS_ENV}).",
)
@click.option("--alpha", type=float, default=None, help="Override the coupling constant.")
@click.pass_context
def cli(ctx, catalog, constants, alpha):
    """Relativistic levels of spin-zero two-body Coulomb systems."""
    if alpha is not None and alpha < 0:
        raise click.BadParameter("must be >= 0", param_hint="--alpha")
    ctx.obj = _Env(catalog, constants, alpha)


SPECTRUM_COLUMNS = [
    "n", "l", "n_r", "branch", "sigma_l", "beta", "d0", "D", "mu0", "mu", "m", "E_n",
    "Eprime", "binding", "iterations", "residual_53", "converged", "error",
]  # fmt: skip


@cli.command()
@click.argument("particle1")
@click.argument("particle2")
@click.option("--Z", "Z", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--n-max", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--l", "l_filter", type=click.IntRange(min=0), multiple=True, help="Only these l (repeatable).")
@click.option(
    "--branch", type=click.Choice(["normal", "abnormal", "both"]), default="normal", show_default=True
)
@click.option(
    "--d0-policy",
    type=click.Choice([p.value for p in D0Policy]),
    default=D0Policy.FREEZE_ZERO.value,
    show_default=True,
    help="Treatment of d0 on the abnormal branch.",
)
@click.option("--rel-tol", type=float, default=1e-14, show_default=True)
@click.option("--max-iter", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--damping", type=click.FloatRange(0, 1, min_open=True), default=1.0, show_default=True)
@format_option
@click.pass_obj
def spectrum(env, particle1, particle2, Z, n_max, l_filter, branch, d0_policy, rel_tol, max_iter, damping, fmt):
    """Energy levels for every (n, l) up to n-max."""
    system = env.system(particle1, particle2, Z)
    config = SolverConfig(rel_tol, max_iter, D0Policy(d0_policy), damping)
    branches = [Branch.NORMAL, Branch.ABNORMAL] if branch == "both" else [Branch(branch)]
    rows = []
    failed = False
    for br in branches:
        for qn in iter_quantum_numbers(n_max, set(l_filter) or None):
            try:
                level = solve_level(system, qn, br, config)
            except TwoBodyError as exc:
                failed = True
                click.echo(f"error: n={qn.n} l={qn.l} {br.value}: {exc}", err=True)
                rows.append({"n": qn.n, "l": qn.l, "n_r": qn.n_r, "branch": br.value,
                             "converged": False, "error": str(exc)})  # fmt: skip
                continue
            row = level.as_row()
            row["binding"] = binding_display(level.binding_energy)
            row["error"] = ""
            rows.append(row)
    comments = [f"{particle1} + {particle2}, Z={Z}, alpha={_fmt_float(system.alpha)}; energies in MeV"]
    _emit(format_table(rows, fmt, SPECTRUM_COLUMNS, comments))
    return EXIT_COMPUTE if failed else EXIT_OK


VERIFY_COLUMNS = [
    "equation", "reference", "beta_closed", "beta_num", "abs_gap", "rel_gap", "tol", "passed",
    "C", "node_count", "n_r", "mismatch", "iterations", "d0",
]  # fmt: skip


@cli.command()
@click.argument("particle1")
@click.argument("particle2")
@click.option("--Z", "Z", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--n", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--l", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--which", type=click.Choice(["approx", "full", "both"]), default="approx", show_default=True)
@click.option("--d0", "d0_override", type=float, default=None, help="Use this d0 instead of the solved level's.")
@click.option("--bracket", type=(float, float), default=None, help="beta search interval LO HI.")
@click.option("--steps", type=click.IntRange(min=10), default=20000, show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True, help="Relative tolerance for the approximate equation.")
@format_option
@click.pass_obj
def verify(env, particle1, particle2, Z, n, l, which, d0_override, bracket, steps, tol, fmt):
    """Shooting-method check of the closed-form beta for one level."""
    system = env.system(particle1, particle2, Z)
    qn = _qn(n, l)
    level = solve_level(system, qn)
    d0 = level.d0 if d0_override is None else d0_override
    g = system.zalpha
    beta_closed = beta_closed_form(l, g, d0, qn.n_r)
    config = ShootingConfig(steps=steps, bracket=bracket)
    rows = []
    approx = None
    if which in ("approx", "both"):
        approx = shoot_eigenvalue_approx(l, g, d0, qn.n_r, config)
        rows.append(_verify_row("approx", "closed_form", compare_beta(beta_closed, approx, tol), approx, qn))
    if which in ("full", "both"):
        full = shoot_eigenvalue_full(l, g, d0, beta_closed if approx is None else approx.beta_num, qn.n_r, config)
        # the full equation is held to the d0-sized budget, relative to the approximate one
        ref_beta = beta_closed if approx is None else approx.beta_num
        full_tol = 10.0 * abs(d0) + (tol if approx is None else 0.0)
        cmp = compare_beta(ref_beta, full, full_tol if full_tol > 0 else tol)
        row = _verify_row("full", "closed_form" if approx is None else "approx", cmp, full, qn)
        row["C"] = cmp.rel_gap / abs(d0) if d0 else None
        rows.append(row)
    comments = [f"{particle1} + {particle2}, Z={Z}, n={n}, l={l}, d0={_fmt_float(d0)}"]
    _emit(format_table(rows, fmt, VERIFY_COLUMNS, comments))
    ok = all(r["passed"] and r["node_count"] == qn.n_r for r in rows)
    return EXIT_OK if ok else EXIT_COMPUTE


def _verify_row(equation, reference, cmp, result, qn):
    row = cmp.as_row()
    row.update(
        equation=equation,
        reference=reference,
        node_count=result.node_count,
        n_r=qn.n_r,
        mismatch=float(result.mismatch),
        iterations=result.iterations,
        d0=result.d0,
    )
    return row


def _qn(n, l):
    try:
        return QuantumNumbers(n, l)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--l") from None


COMPARE_COLUMNS = ["label", "model_energy", "solver_energy", "gap", "gap_order"]


@cli.command()
@click.argument("particle1")
@click.argument("particle2")
@click.option("--Z", "Z", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--n", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--l", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--terms", type=click.IntRange(2, 4), default=4, show_default=True, help="Terms of the heavy-partner series.")
@format_option
@click.pass_obj
def compare(env, particle1, particle2, Z, n, l, terms, fmt):
    """Normal-branch level against the reference models."""
    system = env.system(particle1, particle2, Z)
    level = solve_level(system, _qn(n, l))
    rows = [r.as_row() for r in compare_level(level, terms)]
    ratio = min(system.m01, system.m02) / max(system.m01, system.m02)
    comments = [f"{particle1} + {particle2}, Z={Z}, n={n}, l={l}; energies in MeV, gap = model - solver"]
    if ratio >= 0.2:
        comments.append(f"series row unreliable: mass ratio {_fmt_float(ratio)} >= 0.2")
    _emit(format_table(rows, fmt, COMPARE_COLUMNS, comments))
    return EXIT_OK


WAVEFUNCTION_COLUMNS = ["r_fm", "rho", "R"]


@cli.command()
@click.argument("particle1")
@click.argument("particle2")
@click.option("--Z", "Z", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--n", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--l", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--r-max", type=click.FloatRange(min=0, min_open=True), default=None, help="Outer radius in fm (default: rho = 60 + 10 n).")
@click.option("--points", type=click.IntRange(min=2), default=2000, show_default=True)
@format_option
@click.pass_obj
def wavefunction(env, particle1, particle2, Z, n, l, r_max, points, fmt):
    """Normalised radial wavefunction R(r) on a uniform grid."""
    system = env.system(particle1, particle2, Z)
    level = solve_level(system, _qn(n, l))
    hbar_c = env.constants.hbar_c
    scale = radial_scale(level, hbar_c)
    if r_max is None:
        r_max = (60.0 + 10.0 * n) / scale.alpha_prime
    r = np.linspace(r_max / points, r_max, points)
    wf = radial_wavefunction(level, series_for_level(level), r, hbar_c)
    rows = [{"r_fm": a, "rho": b, "R": c} for a, b, c in zip(wf.r.tolist(), wf.rho.tolist(), wf.R.tolist())]
    comments = [
        f"{particle1} + {particle2}, Z={Z}, n={n}, l={l}; R in fm^-3/2, normalised on the grid",
        f"nodes: {wf.nodes}",
    ]
    if fmt == "json":
        click.echo(f"# nodes: {wf.nodes}", err=True)
    _emit(format_table(rows, fmt, WAVEFUNCTION_COLUMNS, comments))
    return EXIT_OK


def main(argv=None) -> int:
    """Entry point that maps errors onto the documented exit codes."""
    try:
        rv = cli.main(args=argv, prog_name="twobody", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except (click.UsageError, click.Abort) as exc:
        if isinstance(exc, click.UsageError):
            exc.show()
        return EXIT_USAGE
    except CatalogError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except (TwoBodyError, ValueError, ArithmeticError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_COMPUTE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
