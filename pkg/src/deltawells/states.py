"""Resonant-state classification and record types."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

__all__ = ["StateClass", "Parity", "ResonantState", "classify", "CLASSIFY_TOL"]

CLASSIFY_TOL = 1e-9


class StateClass(Enum):
    BOUND = "bound"
    ANTI_BOUND = "anti-bound"
    NORMAL = "normal"


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


def classify(k: complex, tol: float = CLASSIFY_TOL) -> StateClass:
    """Classify an eigen wave number by its position in the complex plane.

    Bound states sit on the positive imaginary axis, anti-bound states on the
    negative imaginary axis, normal resonant states off axis in the lower half
    plane.  Wave numbers within tol of the origin are spurious and rejected,
    as are off-axis points with Im k >= 0 (none exist for a real potential).
    """
    k = complex(k)
    if abs(k) <= tol:
        raise ValueError(f"|k| <= {tol:g}: spurious zero-momentum root")
    if abs(k.real) <= tol:
        return StateClass.BOUND if k.imag > 0 else StateClass.ANTI_BOUND
    if k.imag < 0:
        return StateClass.NORMAL
    raise ValueError(f"unphysical wave number {k}: off axis with Im k >= 0")


@dataclass(frozen=True)
class ResonantState:
    """One resonant state, wave numbers in units of 1/a (half-width a = 1).

    norm_a is the outgoing amplitude outside the system.  norm_c (and norm_d
    for a symmetric triple) are the inner amplitudes.  Parity-mixed states of
    an asymmetric triple record only norm_a; the full piecewise wave is
    rebuilt by the wavefunction module.
    """

    k: complex
    state_class: StateClass
    parity: Parity
    norm_a: complex | None = None
    norm_c: complex | None = None
    norm_d: complex | None = None

    @property
    def energy(self) -> complex:
        """E = k^2 in the hbar = 1, m = 1/2 convention."""
        return self.k * self.k
