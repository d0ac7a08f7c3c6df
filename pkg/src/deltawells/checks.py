"""Named invariant checks backing the `check` CLI subcommand.

Each check takes explicit data where practical so the checks themselves can
be exercised against doctored inputs (fault injection) in the test suite.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .potentials import DeltaPotential, DimensionlessParams
from .rootfinder import SPURIOUS_TOL, SearchWindow, find_all_states
from .secular import (
    SecularEquation,
    residual_double,
    residual_triple_general,
    residual_triple_symmetric_even,
)
from .states import Parity
from .transmission import (
    residue_double,
    t_analytic_double,
    t_mittag_leffler,
    transmission_transfer,
)
from .wavefunction import build_wave_double, orthonormality_matrix

__all__ = ["CheckResult", "run_checks"]


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def check_no_spurious(states) -> CheckResult:
    worst = min((abs(s.k) for s in states), default=np.inf)
    ok = worst > SPURIOUS_TOL
    return CheckResult("spurious-root exclusion", ok, f"min |ka| = {worst:.3e}")


def check_mirror_closure(states, tol: float = 1e-8) -> CheckResult:
    ks = [s.k for s in states]
    worst = 0.0
    for k in ks:
        if abs(k.real) <= SPURIOUS_TOL:
            continue
        err = min(abs(k2 - (-k.conjugate())) for k2 in ks)
        worst = max(worst, err)
    return CheckResult("mirror symmetry closure", worst <= tol, f"max defect = {worst:.3e}")


def check_orthonormality(waves, tol: float = 1e-8) -> CheckResult:
    mat = orthonormality_matrix(waves, -1.0, 1.0)
    err = float(np.nanmax(np.abs(mat - np.eye(len(waves)))))
    return CheckResult("orthonormality", err <= tol, f"max |M - I| = {err:.3e}")


def check_oracle_equivalence(alpha: float, k_grid, tol: float = 1e-12) -> CheckResult:
    pot = DeltaPotential.double(alpha)
    ta = t_analytic_double(k_grid, alpha)
    tt = transmission_transfer(k_grid, pot)
    err = float(np.max(np.abs(ta - tt)))
    return CheckResult("analytic vs transfer matrix", err <= tol, f"max |dt| = {err:.3e}")


def check_flux(alpha: float, k_grid, tol: float = 1e-10) -> CheckResult:
    worst = float(np.max(np.abs(t_analytic_double(k_grid, alpha)) ** 2))
    return CheckResult("flux conservation", worst <= 1.0 + tol, f"max |t|^2 = {worst:.12f}")


def check_ml_vs_analytic(
    alpha: float, states, k_grid, residues=None, tol: float = 0.01
) -> CheckResult:
    """Pole expansion against the closed form; custom residues may be injected."""
    ta = t_analytic_double(k_grid, alpha)
    if residues is None:
        tm = t_mittag_leffler(k_grid, states, alpha)
    else:
        zz = np.asarray(k_grid, dtype=complex)
        acc = np.zeros_like(zz)
        for st, rn in zip(states, residues):
            acc = acc + rn / (zz - st.k)
        tm = zz * np.exp(-2j * zz) * acc
    err = float(np.max(np.abs(np.abs(tm) ** 2 - np.abs(ta) ** 2)))
    return CheckResult("pole expansion vs analytic", err <= tol, f"max ||t|^2 err| = {err:.3e}")


def check_residue_consistency(alpha: float, states, tol: float = 1e-8) -> CheckResult:
    """Numeric contour residues of e^{2iz} t(z)/z against the closed form."""
    worst = 0.0
    for st in states:
        rn = residue_double(st, alpha)
        num = _contour_residue(lambda zc: np.exp(2j * zc) * t_analytic_double(zc, alpha) / zc, st.k)
        worst = max(worst, abs(rn - num))
    return CheckResult("residue identity", worst <= tol, f"max |dR| = {worst:.3e}")


def _contour_residue(f, z0: complex, radius: float = 1e-3, n: int = 256) -> complex:
    theta = 2.0 * np.pi * np.arange(n) / n
    zc = z0 + radius * np.exp(1j * theta)
    vals = f(zc) * (zc - z0)
    return complex(np.mean(vals))


def check_reduction_chain(alpha: float, epsilon: float, tol: float = 1e-9) -> CheckResult:
    """At b = 0 the general residual vanishes on every odd double root and
    every even symmetric-triple root; at epsilon -> 0 the even triple residual
    reduces to the even double one."""
    window = SearchWindow(re_max=8.0, im_min=-3.0, seed_density=6)
    params = DimensionlessParams(alpha, epsilon)
    states = find_all_states(params, window)
    worst = 0.0
    for st in states:
        worst = max(worst, abs(residual_triple_general(st.k, alpha, epsilon, 0.0)))
    pts = [0.5 + 0.1j, -1.2 - 0.7j, 2.0 - 0.3j]
    red = max(
        abs(
            residual_triple_symmetric_even(z, alpha, 1e-12)
            - residual_double(z, alpha, Parity.EVEN)
        )
        for z in pts
    )
    ok = worst <= tol and red <= 1e-9
    return CheckResult(
        "reduction chain", ok, f"b=0 factor defect = {worst:.3e}, eps->0 defect = {red:.3e}"
    )


def run_checks(alpha: float = 3.0, epsilon: float = 2.0, re_max: float = 12.0) -> list[CheckResult]:
    window = SearchWindow(re_max=re_max, im_min=-4.0, seed_density=6)
    states = find_all_states(DimensionlessParams(alpha), window)
    k_grid = np.linspace(0.05, 10.0, 1001)
    first = sorted(states, key=lambda s: (abs(s.k.real), s.k.real, s.k.imag))[:12]
    waves = [build_wave_double(s.k, s.parity, alpha) for s in first]
    axis_states = [s for s in states if abs(s.k.real) <= SPURIOUS_TOL]
    results = [
        check_no_spurious(states),
        check_mirror_closure(states),
        check_orthonormality(waves),
        check_oracle_equivalence(alpha, k_grid),
        check_flux(alpha, k_grid),
        check_ml_vs_analytic(alpha, states, np.linspace(0.2, 10.0, 491)),
        check_residue_consistency(alpha, axis_states + first[2:8]),
        check_reduction_chain(alpha, epsilon),
    ]
    return results
