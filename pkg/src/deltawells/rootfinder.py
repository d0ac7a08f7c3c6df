"""Finds all resonant states in a complex-plane window and tracks branches
along parameter sweeps.

Newton iteration runs on the dimensionless characteristic functions with
analytic derivatives, so convergence basins are reproducible.  Seeding is
deterministic: a Fabry-Perot comb along the real axis (the normal resonant
states are interference modes spaced roughly pi/2 apart in Re ka), seeds on
the imaginary axis for bound/anti-bound candidates, and a rectangular fill
grid.  Raw roots are deduplicated, the spurious z = 0 zero of the odd-sector
equations is discarded, every off-axis root is completed by its mirror
partner -conj(z), and states are classified and parity labelled.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, fsolve

from .potentials import DeltaPotential, DimensionlessParams
from .secular import PoleError, SecularEquation
from .states import Parity, ResonantState, StateClass, classify
from .wavefunction import build_wave_triple, normalize_double

__all__ = [
    "SearchWindow",
    "SweepCurve",
    "SweepEvent",
    "ConsistencyError",
    "seed_grid",
    "newton_solve",
    "find_all_states",
    "sweep_branch",
]

SPURIOUS_TOL = 1e-9
DEDUP_TOL = 1e-8
ESCAPE_RADIUS = 1e6


class ConsistencyError(RuntimeError):
    """Solver self-check failed (e.g. a mirror partner could not be recovered)."""


@dataclass(frozen=True)
class SearchWindow:
    """Search region |Re ka| <= re_max, Im ka >= im_min.

    seed_density counts fill-grid seeds per unit of ka in each direction.
    """

    re_max: float
    im_min: float = -4.0
    seed_density: int = 6

    def __post_init__(self) -> None:
        if self.re_max <= 0:
            raise ValueError("re_max must be positive")
        if self.seed_density < 4:
            raise ValueError("seed_density must be at least 4")

    def contains(self, z: complex, pad: float = 1e-9) -> bool:
        return abs(z.real) <= self.re_max + pad and z.imag >= self.im_min - pad


@dataclass(frozen=True)
class SweepEvent:
    kind: str  # "merge" | "axis_crossing" | "truncated"
    param: float
    z: complex
    message: str = ""


@dataclass
class SweepCurve:
    """Ordered (parameter, wave number) points tracing one branch.

    parameter is one of "alpha", "epsilon", "beta_a"; classes[i] is None at
    points indistinguishable from the origin (a threshold crossing).
    """

    parameter: str
    branch: str
    points: list[tuple[float, complex]] = field(default_factory=list)
    classes: list[StateClass | None] = field(default_factory=list)
    events: list[SweepEvent] = field(default_factory=list)

    def append(self, param: float, z: complex) -> None:
        try:
            cls = classify(z)
        except ValueError:
            cls = None
        self.points.append((param, z))
        self.classes.append(cls)


# ---------------------------------------------------------------------------
# Seeding and Newton iteration.
# ---------------------------------------------------------------------------

_FP_IM_LEVELS = (-0.25, -0.75, -1.5, -2.5, -3.5)


def seed_grid(window: SearchWindow, eq: SecularEquation) -> np.ndarray:
    """Deterministic seed list for one family: Fabry-Perot comb at
    Re ka = n*pi/2, imaginary-axis seeds covering the bound/anti-bound range,
    and a rectangular fill grid at the window's seed density."""
    p = eq.params
    h = 1.0 / window.seed_density
    seeds = []

    n_max = int(window.re_max / (math.pi / 2.0))
    fp_im = sorted({max(window.im_min, v) for v in _FP_IM_LEVELS})
    for n in range(1, n_max + 1):
        for y in fp_im:
            x = n * math.pi / 2.0
            seeds.append(complex(x, y))
            seeds.append(complex(-x, y))

    # On the imaginary axis the reduced wave number q stays below max(2, |eps|)
    # plus coupling corrections, so z = i*q*alpha/2 is covered by:
    y_top = max(1.0, 0.5 * abs(p.alpha) * max(2.0, abs(p.epsilon) + 0.5)) + 0.5
    for y in np.arange(0.1, y_top + 1e-12, 0.1):
        seeds.append(complex(0.0, y))
    for y in np.arange(-0.1, window.im_min - 1e-12, -0.1):
        seeds.append(complex(0.0, y))

    re = np.arange(-window.re_max, window.re_max + h / 2, h)
    im = np.arange(window.im_min, -h / 2 + 1e-12, h)
    rect = (re[:, None] + 1j * im[None, :]).ravel()
    seeds = np.concatenate([np.array(seeds, dtype=complex), rect])
    return np.unique(seeds)


def newton_solve(
    eq: SecularEquation, seed: complex, tol: float = 1e-12, max_iter: int = 80
) -> complex | None:
    """Newton iteration from one seed; None on divergence, pole hits, or
    failure to reach both |F| <= tol and a step below tol within max_iter."""
    z = complex(seed)
    for _ in range(max_iter):
        try:
            f = complex(eq.residual(z))
            d = complex(eq.derivative(z))
        except (PoleError, ZeroDivisionError):
            return None
        if not (np.isfinite(f.real) and np.isfinite(f.imag)):
            return None
        if not (np.isfinite(d.real) and np.isfinite(d.imag)) or d == 0:
            return None
        step = f / d
        if abs(f) <= tol and abs(step) <= tol * max(1.0, abs(z)):
            return z
        z = z - step
        if abs(z) > ESCAPE_RADIUS or not np.isfinite(abs(z)):
            return None
    return None


def _newton_array(
    eq: SecularEquation, seeds: np.ndarray, tol: float, max_iter: int = 80
) -> np.ndarray:
    """Vectorized Newton on all seeds at once; returns converged roots only."""
    z = np.array(seeds, dtype=np.complex128)
    alive = np.ones(z.shape, dtype=bool)
    done = np.zeros(z.shape, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            idx = np.flatnonzero(alive)
            if idx.size == 0:
                break
            za = z[idx]
            f = np.asarray(eq.residual(za), dtype=np.complex128)
            d = np.asarray(eq.derivative(za), dtype=np.complex128)
            good = np.isfinite(f) & np.isfinite(d) & (d != 0)
            step = np.where(good, f / np.where(d == 0, 1, d), np.inf)
            conv = good & (np.abs(f) <= tol) & (np.abs(step) <= tol * np.maximum(1.0, np.abs(za)))
            znew = za - step
            keep = good & ~conv & np.isfinite(znew) & (np.abs(znew) <= ESCAPE_RADIUS)
            z[idx[keep]] = znew[keep]
            done[idx[conv]] = True
            alive[idx] = keep
    return z[done]


def _dedup(roots, tol: float = DEDUP_TOL) -> list[complex]:
    out: list[complex] = []
    for r in sorted((complex(r) for r in roots), key=lambda c: (c.real, c.imag)):
        if all(abs(r - a) > tol for a in out):
            out.append(r)
    return out


def _solve_family(
    eq: SecularEquation, window: SearchWindow, tol: float, n_threads: int
) -> list[complex]:
    seeds = seed_grid(window, eq)
    if n_threads > 1:
        chunks = np.array_split(seeds, n_threads)
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            parts = list(pool.map(lambda c: _newton_array(eq, c, tol), chunks))
        roots = np.concatenate(parts) if parts else np.array([], dtype=complex)
    else:
        roots = _newton_array(eq, seeds, tol)
    kept = [
        complex(r)
        for r in roots
        if abs(r) > SPURIOUS_TOL and window.contains(complex(r))
    ]
    # drop anything unphysical (off axis in the upper half plane): such points
    # are never zeros of these characteristic functions, only Newton artefacts
    kept = [r for r in kept if abs(r.real) <= SPURIOUS_TOL or r.imag < 0]
    roots = _dedup(kept)
    return _mirror_complete(eq, roots, window, tol)


def _mirror_complete(
    eq: SecularEquation, roots: list[complex], window: SearchWindow, tol: float
) -> list[complex]:
    out = list(roots)
    for r in roots:
        if abs(r.real) <= SPURIOUS_TOL:
            continue
        target = -r.conjugate()
        if any(abs(target - x) <= DEDUP_TOL for x in out):
            continue
        if not window.contains(target):
            continue
        found = newton_solve(eq, target, tol)
        if found is None or abs(found - target) > 1e-6 * max(1.0, abs(target)):
            raise ConsistencyError(
                f"mirror partner of {r} not recoverable (family {eq.family})"
            )
        out.append(found)
    return out


# ---------------------------------------------------------------------------
# Full-spectrum search.
# ---------------------------------------------------------------------------

def _families_for(params: DimensionlessParams) -> list[tuple[Parity, SecularEquation]]:
    if params.epsilon == 0.0:
        base = DimensionlessParams(params.alpha)
        return [
            (Parity.EVEN, SecularEquation("double_even", base)),
            (Parity.ODD, SecularEquation("double_odd", base)),
        ]
    if params.b_over_a == 0.0:
        return [
            (Parity.EVEN, SecularEquation("triple_sym_even", params)),
            (Parity.ODD, SecularEquation("double_odd", DimensionlessParams(params.alpha))),
        ]
    return [(Parity.MIXED, SecularEquation("triple_general", params))]


def _make_state(z: complex, parity: Parity, params: DimensionlessParams) -> ResonantState:
    cls = classify(z)
    norm_a = norm_c = norm_d = None
    try:
        if parity is Parity.MIXED:
            wave = build_wave_triple(z, params.alpha, params.epsilon, params.b_over_a, tol=1e-8)
            norm_a = wave.amplitudes[-1][0]
        elif params.epsilon != 0.0 and parity is Parity.EVEN:
            wave = build_wave_triple(z, params.alpha, params.epsilon, 0.0, tol=1e-8)
            norm_a = wave.amplitudes[-1][0]
            norm_c, norm_d = wave.amplitudes[2]
        else:
            sign = 1.0 if parity is Parity.EVEN else -1.0
            probe = ResonantState(k=z, state_class=cls, parity=parity)
            norm_a, norm_c = normalize_double(probe, params.alpha)
    except ArithmeticError:
        pass  # degenerate normalization: record the state without amplitudes
    return ResonantState(
        k=z, state_class=cls, parity=parity, norm_a=norm_a, norm_c=norm_c, norm_d=norm_d
    )


def find_all_states(
    potential: DeltaPotential | DimensionlessParams,
    window: SearchWindow,
    tol: float = 1e-12,
    *,
    n_threads: int | None = None,
) -> list[ResonantState]:
    """All resonant states of a double or triple structure in the window.

    The returned list is deduplicated (pairwise |dz| > 1e-8), closed under
    z -> -conj(z) within the window, free of the spurious z = 0 root, parity
    labelled (even/odd for symmetric structures via their sector equations,
    mixed otherwise) and sorted by Re then Im.  The thread count may be
    overridden with the DELTAWELLS_THREADS environment variable; the result
    does not depend on it.
    """
    params = (
        potential.to_dimensionless()
        if isinstance(potential, DeltaPotential)
        else potential
    )
    if n_threads is None:
        n_threads = int(os.environ.get("DELTAWELLS_THREADS", "1"))
    states: list[ResonantState] = []
    for parity, eq in _families_for(params):
        for z in _solve_family(eq, window, tol, max(1, n_threads)):
            states.append(_make_state(z, parity, params))
    states.sort(key=lambda st: (st.k.real, st.k.imag))
    return states


# ---------------------------------------------------------------------------
# Branch tracking along a parameter sweep.
# ---------------------------------------------------------------------------

AXIS_TOL = 1e-7
S_MAX_DEFAULT = 50.0


def _fold_polish(eq: SecularEquation, param: str, y0: float, p0: float):
    """Polish a branch-merge point: solve F(iy; p) = 0 and dF/dy = 0.

    On the imaginary axis all characteristic functions are real valued, so
    this is a genuine 2x2 real system; at a fold its Jacobian is nonsingular.
    """

    def system(v):
        y, p = v
        eqp = eq.with_param(param, p)
        g = complex(eqp.residual(1j * y))
        gy = complex(1j * eqp.derivative(1j * y))
        return [g.real, gy.real]

    sol, info, ier, _ = fsolve(system, [y0, p0], full_output=True)
    if ier != 1:
        return y0, p0
    return float(sol[0]), float(sol[1])


def sweep_branch(
    eq: SecularEquation,
    param: str,
    start: float,
    stop: float,
    step: float,
    start_root: complex,
    *,
    branch: str = "",
    tol: float = 1e-12,
    continuity: float = 0.1,
    s_max: float = S_MAX_DEFAULT,
) -> SweepCurve:
    """Continue one root from start to stop, using each accepted root to seed
    the next Newton solve.

    Detected events:
      * axis_crossing - an on-axis root passes through z = 0 (bound <->
        anti-bound transition); the crossing parameter is refined by bisection
        on Im z to ~1e-12.
      * merge - two on-axis branches collide and leave the axis as a mirror
        pair of normal states; the merge parameter comes from a quadratic
        local fit through the last on-axis points, polished by a fold solve.
      * truncated - continuation lost (step halving exhausted, or |s| > s_max).
    """
    curve = SweepCurve(parameter=param, branch=branch)
    root = newton_solve(eq.with_param(param, start), start_root, tol)
    if root is None or abs(root - start_root) > continuity:
        raise ValueError("start state is not a verified root at the range start")
    curve.append(start, root)

    direction = 1.0 if stop >= start else -1.0
    h0 = abs(step)
    min_h = h0 / 1024.0
    p_cur, z_cur = start, root

    def continued(p_value: float, seed: complex) -> complex | None:
        return newton_solve(eq.with_param(param, p_value), seed, tol)

    while (stop - p_cur) * direction > 1e-15:
        h = min(h0, abs(stop - p_cur))
        accepted = None
        while h >= min_h:
            p_try = p_cur + direction * h
            if len(curve.points) >= 2:
                (p_a, z_a), (p_b, z_b) = curve.points[-2], curve.points[-1]
                slope = (z_b - z_a) / (p_b - p_a) if p_b != p_a else 0.0
                seed = z_cur + slope * (p_try - p_cur)
            else:
                seed = z_cur
            z_try = continued(p_try, seed)
            if z_try is not None and abs(z_try - z_cur) <= continuity:
                accepted = (p_try, z_try)
                break
            h /= 2.0
        if accepted is None:
            curve.events.append(
                SweepEvent("truncated", p_cur, z_cur, "continuation lost after step halving")
            )
            return curve
        p_new, z_new = accepted

        was_axis = abs(z_cur.real) <= AXIS_TOL
        is_axis = abs(z_new.real) <= AXIS_TOL
        if was_axis and is_axis and z_cur.imag * z_new.imag < 0:
            p_c = _refine_axis_crossing(eq, param, p_cur, p_new, z_cur, z_new, tol)
            curve.events.append(
                SweepEvent("axis_crossing", p_c, 0.0j, "bound/anti-bound transition at s = 0")
            )
        if was_axis and not is_axis:
            ys = [pt[1].imag for pt in curve.points[-3:] if abs(pt[1].real) <= AXIS_TOL]
            ps = [pt[0] for pt in curve.points[-3:] if abs(pt[1].real) <= AXIS_TOL]
            if len(ys) == 3 and len(set(ys)) == 3:
                coeff = np.polyfit(ys, ps, 2)
                y_est = -coeff[1] / (2.0 * coeff[0])
                p_est = float(np.polyval(coeff, y_est))
            else:
                y_est, p_est = z_cur.imag, p_cur
            y_m, p_m = _fold_polish(eq, param, y_est, p_est)
            curve.events.append(
                SweepEvent("merge", p_m, 1j * y_m, "anti-bound pair merges into normal pair")
            )

        curve.append(p_new, z_new)
        p_cur, z_cur = p_new, z_new
        if 2.0 * abs(z_cur) > s_max:
            curve.events.append(
                SweepEvent("truncated", p_cur, z_cur, f"|s| exceeded s_max = {s_max:g}")
            )
            return curve
    return curve


def _refine_axis_crossing(
    eq: SecularEquation,
    param: str,
    p_lo: float,
    p_hi: float,
    z_lo: complex,
    z_hi: complex,
    tol: float,
) -> float:
    """Bisection on Im z(p) for the threshold where an axis root crosses z = 0."""

    def imag_of_root(p_value: float) -> float:
        t = (p_value - p_lo) / (p_hi - p_lo) if p_hi != p_lo else 0.0
        seed = z_lo + (z_hi - z_lo) * t
        r = newton_solve(eq.with_param(param, p_value), seed, tol)
        if r is None:  # at the crossing the root sits at the origin
            return 0.0
        return r.imag

    try:
        return brentq(imag_of_root, p_lo, p_hi, xtol=1e-12, rtol=8.9e-16)
    except ValueError:
        return 0.5 * (p_lo + p_hi)
