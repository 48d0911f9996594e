"""
Acceptance criteria 1-10, each at its stated tolerance.

Run under pytest (one PASS/FAIL line per criterion is printed even with
output capture on) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import math
import random
import sys

import numpy as np
import pytest

from twobody import (
    Branch,
    QuantumNumbers,
    ShootingConfig,
    SupercriticalCouplingError,
    TwoBodyError,
    TwoBodySystem,
    beta_closed_form,
    bohr_binding,
    compare_beta,
    connell_energy,
    connell_epsilon,
    default_catalog,
    default_constants,
    energy_normal,
    kg_one_body_energy,
    radial_scale,
    radial_wavefunction,
    series_for_level,
    shoot_eigenvalue_approx,
    shoot_eigenvalue_full,
    sigma_l_zeroth,
    solve_level,
)
from twobody.shooting import full_vs_approx
from twobody.spectrum import iter_quantum_numbers

CATALOG = default_catalog()
CONSTANTS = default_constants()
ALPHA = CONSTANTS.alpha
M_PI = CATALOG["pi-"].rest_energy


def _system(a, b, Z=1, alpha=ALPHA):
    return TwoBodySystem(CATALOG[a].rest_energy, CATALOG[b].rest_energy, Z, alpha)


HYDROGEN = _system("electron", "proton")
PIONIUM = _system("pi-", "pi+")
PIONIC_DEUTERIUM = _system("pi-", "deuteron")
SYSTEMS = {
    "hydrogen": HYDROGEN,
    "pionium": PIONIUM,
    "pi-d": PIONIC_DEUTERIUM,
    "muonium-like Z=30": _system("muon-", "proton", 30),
    "e-Pb Z=68": _system("electron", "lead-nucleus", 68),
}


def criterion_1():
    """Free limit: alpha = 0 gives E_n = m01 + m02 for n <= 5."""
    rng = random.Random(1)
    worst = 0.0
    for _ in range(25):
        sys_ = TwoBodySystem(10 ** rng.uniform(-3, 5), 10 ** rng.uniform(-3, 5), rng.randint(1, 90), 0.0)
        for qn in iter_quantum_numbers(5):
            level = solve_level(sys_, qn)
            worst = max(worst, abs(level.E_n - sys_.m0) / sys_.m0)
    return worst <= 1e-14, f"max rel deviation {worst:.2e} (tol 1e-14)"


def criterion_2():
    """Bohr-order agreement of hydrogen and pionium 1S."""
    h = solve_level(HYDROGEN, QuantumNumbers(1, 0))
    h_bohr = bohr_binding(HYDROGEN.nonrel_reduced_mass, HYDROGEN.zalpha, 1)
    p = solve_level(PIONIUM, QuantumNumbers(1, 0))
    p_bohr = bohr_binding(M_PI / 2, PIONIUM.zalpha, 1)
    rh = abs(h.binding_energy / h_bohr - 1)
    rp = abs(p.binding_energy / p_bohr - 1)
    ok = rh <= 1e-4 and rp <= 1e-3 and abs(h_bohr * 1e6 - 13.598) < 1e-3 and abs(p_bohr * 1e3 - 1.858) < 1e-3
    return ok, (
        f"H 1S {h.binding_energy * 1e6:.6f} eV vs Bohr {h_bohr * 1e6:.6f} eV, rel {rh:.2e} (tol 1e-4); "
        f"pionium 1S {p.binding_energy * 1e3:.6f} keV vs {p_bohr * 1e3:.6f} keV, rel {rp:.2e} (tol 1e-3)"
    )


def criterion_3():
    """Heavy-partner limit against the one-body Klein-Gordon level."""
    m01 = CATALOG["electron"].rest_energy
    sys_ = TwoBodySystem(m01, 1e8 * m01, 1, ALPHA)
    worst = 0.0
    for n, l in [(1, 0), (2, 0), (2, 1), (3, 2)]:
        level = solve_level(sys_, QuantumNumbers(n, l))
        kg = kg_one_body_energy(m01, sys_.zalpha, n, l)
        worst = max(worst, abs(level.binding_energy / kg - 1))
    return worst <= 1e-6, f"max rel deviation {worst:.2e} (tol 1e-6)"


def criterion_4():
    """energy_normal equals the two-particle Sommerfeld formula under eps = l - sigma_l."""
    rng = random.Random(4)
    worst = 0.0
    for _ in range(20):
        n = rng.randint(1, 10)
        l = rng.randint(0, n - 1)
        sys_ = TwoBodySystem(10 ** rng.uniform(-1, 4), 10 ** rng.uniform(-1, 4), rng.randint(1, 60), ALPHA)
        level = solve_level(sys_, QuantumNumbers(n, l))
        E = energy_normal(sys_.m01, sys_.m02, sys_.zalpha, level.beta)
        C = connell_energy(sys_.m01, sys_.m02, sys_.zalpha, level.qn.n_r, connell_epsilon(level))
        worst = max(worst, abs(C - E) / E)
    return worst <= 1e-14, f"20 random levels, max rel gap {worst:.2e} (tol 1e-14)"


def criterion_5():
    """Quadratic-root residual at every converged level."""
    worst, count = 0.0, 0
    for sys_ in SYSTEMS.values():
        for branch in Branch:
            for qn in iter_quantum_numbers(8):
                level = solve_level(sys_, qn, branch)
                worst = max(worst, level.residual_53)
                count += 1
    return worst <= 1e-10, f"{count} levels, max residual {worst:.2e} (tol 1e-10)"


def criterion_6():
    """Series termination for all converged levels with n <= 6."""
    worst, count = 0.0, 0
    for sys_ in SYSTEMS.values():
        for qn in iter_quantum_numbers(6):
            level = solve_level(sys_, qn)
            worst = max(worst, series_for_level(level).termination_ratio)
            count += 1
    return worst <= 1e-12, f"{count} levels, max |b_(n_r+1)|/max|b| {worst:.2e} (tol 1e-12)"


def criterion_7():
    """Shooting oracle on the approximate and full radial equations."""
    worst_approx, worst_C, worst_pion = 0.0, 0.0, 0.0
    nodes_ok = True
    count = 0
    for name, sys_ in (("hydrogen", HYDROGEN), ("pionium", PIONIUM)):
        for qn in iter_quantum_numbers(3):
            level = solve_level(sys_, qn)
            g, d0, n_r = sys_.zalpha, level.d0, qn.n_r
            approx = shoot_eigenvalue_approx(qn.l, g, d0, n_r)
            cmp = compare_beta(beta_closed_form(qn.l, g, d0, n_r), approx, tol=1e-8)
            full = shoot_eigenvalue_full(qn.l, g, d0, approx.beta_num, n_r)
            gap = full_vs_approx(approx, full)
            worst_approx = max(worst_approx, cmp.rel_gap)
            worst_C = max(worst_C, gap["C"])
            if name == "pionium" and qn.n == 1:
                worst_pion = gap["rel_gap"]
            nodes_ok &= approx.node_count == n_r and full.node_count == n_r
            count += 1
    ok = worst_approx <= 1e-8 and worst_C <= 10 and worst_pion <= 1e-4 and nodes_ok
    return ok, (
        f"{count} levels; approx vs closed form max rel {worst_approx:.2e} (tol 1e-8); "
        f"full vs approx C = rel_gap/d0 max {worst_C:.3f} (tol 10); pionium 1S rel gap {worst_pion:.2e}"
    )


def criterion_8():
    """Abnormal pionium levels: positive, decreasing, n E_n -> alpha m_pi, E_n -> 0."""
    energies = [solve_level(PIONIUM, QuantumNumbers(n, 0), Branch.ABNORMAL).E_n for n in range(1, 201)]
    positive = all(E > 0 for E in energies)
    decreasing = all(b < a for a, b in zip(energies, energies[1:]))
    target = ALPHA * M_PI
    rel = abs(200 * energies[-1] / target - 1)
    far = [solve_level(PIONIUM, QuantumNumbers(n, 0), Branch.ABNORMAL).E_n for n in (10**3, 10**5, 10**7)]
    to_zero = far[0] > far[1] > far[2] and far[2] < 1e-6 * energies[0]
    ok = positive and decreasing and rel <= 1e-3 and to_zero and abs(target - 1.0185) < 1e-4
    return ok, (
        f"positive={positive} decreasing={decreasing}; 200 E_200 = {200 * energies[-1]:.6f} MeV vs "
        f"alpha m_pi = {target:.6f} MeV, rel {rel:.2e} (tol 1e-3); E at n=1e7 {far[2]:.3e} MeV"
    )


def criterion_9():
    """Swap symmetry, normal-branch monotonicity, node count."""
    worst_swap = 0.0
    monotone = True
    nodes_ok = True
    for sys_ in SYSTEMS.values():
        for l in range(4):
            energies = []
            for n in range(l + 1, 9):
                a = solve_level(sys_, QuantumNumbers(n, l))
                b = solve_level(sys_.swapped(), QuantumNumbers(n, l))
                worst_swap = max(worst_swap, abs(a.E_n - b.E_n) / a.E_n)
                energies.append(a.E_n)
            monotone &= all(y > x for x, y in zip(energies, energies[1:]))
    for sys_ in (HYDROGEN, PIONIUM, PIONIC_DEUTERIUM):
        for qn in iter_quantum_numbers(6):
            level = solve_level(sys_, qn)
            scale = radial_scale(level, CONSTANTS.hbar_c)
            rho_max = 60.0 + 10.0 * qn.n
            r = np.linspace(rho_max / 4000, rho_max, 4000) / scale.alpha_prime
            wf = radial_wavefunction(level, series_for_level(level), r, CONSTANTS.hbar_c)
            nodes_ok &= wf.nodes == qn.n_r
    ok = worst_swap <= 1e-14 and monotone and nodes_ok
    return ok, f"swap max rel {worst_swap:.2e} (tol 1e-14); monotone={monotone}; nodes==n_r for n<=6: {nodes_ok}"


def criterion_10():
    """Supercritical guard for l = 0 exactly at Z alpha >= 1/2."""
    e, pb = CATALOG["electron"], CATALOG["lead-nucleus"]

    def outcome(Z, alpha=ALPHA):
        try:
            solve_level(TwoBodySystem(e.rest_energy, pb.rest_energy, Z, alpha), QuantumNumbers(1, 0))
        except SupercriticalCouplingError:
            return "supercritical"
        except TwoBodyError as exc:
            return type(exc).__name__
        return "ok"

    z68, z69 = outcome(68), outcome(69)
    # the guard itself, on Z alpha one ulp either side of 1/2
    guard = []
    for g in (math.nextafter(0.5, 0.0), 0.5, math.nextafter(0.5, 1.0)):
        try:
            sigma_l_zeroth(0, g)
            guard.append(False)
        except SupercriticalCouplingError:
            guard.append(True)
    # a full solve 1e-5 below the threshold still converges; closer than
    # O(d0) the iteration reports a negative radicand instead (see notes)
    near = outcome(50, (0.5 - 1e-5) / 50)
    ok = z68 == "ok" and z69 == "supercritical" and guard == [False, True, True] and near == "ok"
    return ok, (
        f"Z=68 {z68}, Z=69 {z69}; guard at Z alpha = 1/2 - ulp, 1/2, 1/2 + ulp raises {guard}; "
        f"Z alpha = 1/2 - 1e-5 {near}"
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]  # fmt: skip


def _line(index, ok, detail):
    return f"criterion {index:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1))
def test_criterion(index, capsys):
    ok, detail = CRITERIA[index - 1]()
    with capsys.disabled():
        print("\n" + _line(index, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(i, *fn()) for i, fn in enumerate(CRITERIA, start=1)]
    for i, ok, detail in results:
        print(_line(i, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
