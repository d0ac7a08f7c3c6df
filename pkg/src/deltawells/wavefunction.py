"""Piecewise plane-wave eigenfunctions and their outgoing-wave normalization.

A resonant-state wave is P e^{ikx} + Q e^{-ikx} on each smooth region between
delta positions and purely outgoing outside the system.  Because such waves
grow exponentially, normalization combines a finite overlap integral with a
boundary compensation term,

    N_nm = int_{xL}^{xR} psi_n psi_m dx
           - [psi_n(xL) psi_m(xL) + psi_n(xR) psi_m(xR)] / (i (k_n + k_m)),

which equals delta_nm for normalized states and is independent of the
bracketing points xL <= -a, xR >= a.  Note the products carry no complex
conjugation.  All coordinates are in units of the half-width a (so the outer
deltas sit at -1 and +1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .secular import residual_double
from .states import Parity, ResonantState

__all__ = [
    "PiecewiseWave",
    "NotARootError",
    "NormalizationError",
    "build_wave_double",
    "build_wave_triple",
    "normalize_double",
    "siegert_product",
    "orthonormality_matrix",
]


class NotARootError(ValueError):
    """The supplied wave number does not satisfy the secular equation."""


class NormalizationError(ArithmeticError):
    """Degenerate normalization (vanishing norm or amplitude pole)."""


@dataclass(frozen=True)
class PiecewiseWave:
    """psi(x) = P_i e^{ikx} + Q_i e^{-ikx} on region i between the boundaries.

    Region 0 lies left of boundaries[0], region len(boundaries) right of
    boundaries[-1].  Outgoing form is enforced: P = 0 in the leftmost region
    and Q = 0 in the rightmost.
    """

    k: complex
    boundaries: tuple[float, ...]
    amplitudes: tuple[tuple[complex, complex], ...]

    def __post_init__(self) -> None:
        if len(self.amplitudes) != len(self.boundaries) + 1:
            raise ValueError("need exactly one amplitude pair per region")
        if self.amplitudes[0][0] != 0 or self.amplitudes[-1][1] != 0:
            raise ValueError("outermost regions must be purely outgoing")

    def _pq(self):
        p = np.array([amp[0] for amp in self.amplitudes])
        q = np.array([amp[1] for amp in self.amplitudes])
        return p, q

    def region_index(self, x) -> np.ndarray:
        return np.searchsorted(self.boundaries, np.asarray(x, dtype=float), side="right")

    def __call__(self, x):
        xa = np.asarray(x, dtype=float)
        p, q = self._pq()
        idx = self.region_index(xa)
        val = p[idx] * np.exp(1j * self.k * xa) + q[idx] * np.exp(-1j * self.k * xa)
        return complex(val) if np.ndim(x) == 0 else val

    def derivative(self, x):
        xa = np.asarray(x, dtype=float)
        p, q = self._pq()
        idx = self.region_index(xa)
        val = 1j * self.k * (p[idx] * np.exp(1j * self.k * xa) - q[idx] * np.exp(-1j * self.k * xa))
        return complex(val) if np.ndim(x) == 0 else val

    def value_in_region(self, i: int, x: float) -> complex:
        """One-sided limit: evaluate region i's form at x (for boundary checks)."""
        p, q = self.amplitudes[i]
        return p * np.exp(1j * self.k * x) + q * np.exp(-1j * self.k * x)

    def derivative_in_region(self, i: int, x: float) -> complex:
        p, q = self.amplitudes[i]
        return 1j * self.k * (p * np.exp(1j * self.k * x) - q * np.exp(-1j * self.k * x))

    def scaled(self, factor: complex) -> "PiecewiseWave":
        amps = tuple((factor * p, factor * q) for p, q in self.amplitudes)
        return PiecewiseWave(self.k, self.boundaries, amps)


def _norm_amplitudes_double(z: complex, sign: float, alpha: float) -> tuple[complex, complex]:
    z = complex(z)
    if z == 0:
        raise NormalizationError("k = 0 has no normalizable wave")
    w = alpha + 2j * z
    if w == 0:
        raise NormalizationError("amplitude pole gamma + 2ik = 0")
    arg = sign * (1.0 - 1.0 / w)
    if arg == 0:
        raise NormalizationError("degenerate normalization: square-root argument vanishes")
    c = 1.0 / (2.0 * np.sqrt(arg))  # principal branch
    a_amp = c * (2j * z) / w
    return complex(a_amp), complex(c)


def normalize_double(state: ResonantState, alpha: float) -> tuple[complex, complex]:
    """Closed-form normalization constants (A, C) of a double-structure state:
    C = 1/(2 sqrt(+-(1 - 1/(alpha + 2iz)))), A = C / (1 + alpha/(2iz)),
    upper sign even.  The resulting wave has unit Siegert self-product.
    """
    sign = 1.0 if state.parity is Parity.EVEN else -1.0
    if state.parity is Parity.MIXED:
        raise ValueError("mixed-parity states are not double-structure states")
    return _norm_amplitudes_double(state.k, sign, alpha)


def build_wave_double(z: complex, parity, alpha: float, tol: float = 1e-10) -> PiecewiseWave:
    """Normalized double-structure wave: A e^{ikx} outside, C(e^{ikx} +- e^{-ikx}) inside.

    z must satisfy the double secular equation for this parity within tol.
    """
    parity = Parity(parity) if not isinstance(parity, Parity) else parity
    res = complex(residual_double(z, alpha, parity))
    if abs(res) > tol:
        raise NotARootError(f"|residual| = {abs(res):.3e} > {tol:g} at z = {z}")
    sign = 1.0 if parity is Parity.EVEN else -1.0
    a_amp, c = _norm_amplitudes_double(z, sign, alpha)
    amps = ((0.0, sign * a_amp), (c, sign * c), (a_amp, 0.0))
    return PiecewiseWave(complex(z), (-1.0, 1.0), amps)


def build_wave_triple(
    z: complex,
    alpha: float,
    epsilon: float,
    b_over_a: float = 0.0,
    tol: float = 1e-10,
) -> PiecewiseWave:
    """Normalized triple-structure wave built by propagating plane-wave
    amplitudes through the three deltas, starting from a purely outgoing
    left tail.

    z must be an eigen wave number: the propagated right tail must come out
    purely outgoing (relative incoming remainder below tol), which is
    equivalent to the corresponding secular equation within the same
    tolerance.  Continuity and the derivative-jump conditions hold exactly by
    construction.  Normalization enforces unit Siegert self-product using
    exact piecewise integrals; there is no closed form for the triple.
    """
    z = complex(z)
    if z == 0:
        raise NotARootError("z = 0 is never an eigen wave number")
    positions = (-1.0, b_over_a, 1.0)
    strengths = (alpha, epsilon * alpha, alpha)
    amps = [(0.0 + 0.0j, 1.0 + 0.0j)]
    p, q = 0.0 + 0.0j, 1.0 + 0.0j
    for x0, g in zip(positions, strengths):
        c = 1j * g / (2.0 * z)
        p, q = (
            (1.0 + c) * p + c * np.exp(-2j * z * x0) * q,
            -c * np.exp(2j * z * x0) * p + (1.0 - c) * q,
        )
        amps.append((complex(p), complex(q)))
    scale = max(max(abs(pp), abs(qq)) for pp, qq in amps)
    if abs(q) > tol * scale:
        raise NotARootError(
            f"incoming remainder {abs(q):.3e} (scale {scale:.3e}) exceeds tol; z is not a root"
        )
    amps[-1] = (amps[-1][0], 0.0)
    wave = PiecewiseWave(z, positions, tuple(amps))
    norm = siegert_product(wave, wave, -1.0, 1.0)
    if norm == 0:
        raise NormalizationError("vanishing Siegert self-product")
    return wave.scaled(1.0 / np.sqrt(norm))


# ---------------------------------------------------------------------------
# Siegert products: exact piecewise integrals and a quadrature version.
# ---------------------------------------------------------------------------

def _exp_integral(w: complex, lo: float, hi: float) -> complex:
    """int_lo^hi e^{i w x} dx, exact."""
    if w == 0:
        return complex(hi - lo)
    return (np.exp(1j * w * hi) - np.exp(1j * w * lo)) / (1j * w)


def _breakpoints(wave_n: PiecewiseWave, wave_m: PiecewiseWave, x_left: float, x_right: float):
    inner = sorted(set(wave_n.boundaries) | set(wave_m.boundaries))
    pts = [x_left] + [b for b in inner if x_left < b < x_right] + [x_right]
    return pts

def siegert_product(
    wave_n: PiecewiseWave, wave_m: PiecewiseWave, x_left: float, x_right: float
) -> complex:
    """Overlap integral minus boundary compensation term, exact per piece.

    Indeterminate for k_n + k_m = 0 (the boundary term denominator vanishes);
    such pairs raise a ValueError and must be flagged by the caller.
    """
    kn, km = wave_n.k, wave_m.k
    ksum = kn + km
    if ksum == 0:
        raise ValueError("indeterminate pair: k_n + k_m = 0")
    total = 0.0 + 0.0j
    for lo, hi in zip(*(lambda p: (p[:-1], p[1:]))(_breakpoints(wave_n, wave_m, x_left, x_right))):
        mid = 0.5 * (lo + hi)
        pn, qn = wave_n.amplitudes[int(wave_n.region_index(mid))]
        pm, qm = wave_m.amplitudes[int(wave_m.region_index(mid))]
        kdif = kn - km
        total += pn * pm * _exp_integral(ksum, lo, hi)
        total += pn * qm * _exp_integral(kdif, lo, hi)
        total += qn * pm * _exp_integral(-kdif, lo, hi)
        total += qn * qm * _exp_integral(-ksum, lo, hi)
    boundary = (
        wave_n(x_left) * wave_m(x_left) + wave_n(x_right) * wave_m(x_right)
    ) / (1j * ksum)
    return total - boundary


@lru_cache(maxsize=None)
def _gl_nodes(order: int):
    return np.polynomial.legendre.leggauss(order)


def _piece_quadrature(lo: float, hi: float, panels: int, order: int = 32):
    nodes, weights = _gl_nodes(order)
    edges = np.linspace(lo, hi, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    x = (mids[:, None] + half * nodes[None, :]).ravel()
    w = np.tile(half * weights, panels)
    return x, w


def orthonormality_matrix(
    waves: list[PiecewiseWave], x_left: float, x_right: float, n_points: int = 4096
) -> np.ndarray:
    """Matrix of Siegert products by composite Gauss-Legendre quadrature.

    Quadrature panels never straddle a delta position, so each piece is
    analytic and the rule converges spectrally.  Entries for indeterminate
    pairs (k_n + k_m = 0) are set to NaN.
    """
    n = len(waves)
    ks = np.array([w.k for w in waves])
    inner = sorted({b for w in waves for b in w.boundaries if x_left < b < x_right})
    pts = [x_left] + inner + [x_right]
    total_len = x_right - x_left
    mat = np.zeros((n, n), dtype=complex)
    for lo, hi in zip(pts[:-1], pts[1:]):
        panels = max(1, int(np.ceil(n_points * (hi - lo) / total_len / 32)))
        x, w = _piece_quadrature(lo, hi, panels)
        psi = np.array([wave(x) for wave in waves])
        mat += (psi * w) @ psi.T
    v_left = np.array([wave(x_left) for wave in waves])
    v_right = np.array([wave(x_right) for wave in waves])
    ksum = ks[:, None] + ks[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        boundary = (np.outer(v_left, v_left) + np.outer(v_right, v_right)) / (1j * ksum)
    mat = mat - boundary
    mat[ksum == 0] = np.nan
    return mat
