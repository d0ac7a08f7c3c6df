"""Dirac-delta well/barrier potentials and their dimensionless parameters.

Units follow hbar = 1, m = 1/2, so the stationary Schroedinger equation reads
-psi'' + V(x) psi = k^2 psi with V(x) = -sum_j g_j delta(x - x_j).  A positive
strength g_j is an attractive well, a negative one a barrier.
"""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["DeltaPotential", "DimensionlessParams", "reduced_q", "reduced_s"]


@dataclass(frozen=True)
class DimensionlessParams:
    """Reduced couplings of the standard double/triple delta layouts.

    alpha     : gamma * a (outer strength times half-width)
    epsilon   : beta / gamma (middle-to-outer strength ratio, 0 for a double)
    b_over_a  : middle delta position in units of the half-width
    """

    alpha: float
    epsilon: float = 0.0
    b_over_a: float = 0.0

    def __post_init__(self) -> None:
        if not -1.0 < self.b_over_a < 1.0:
            raise ValueError(f"b_over_a must lie in (-1, 1), got {self.b_over_a}")


@dataclass(frozen=True)
class DeltaPotential:
    """V(x) = -sum_i strengths[i] * delta(x - positions[i]).

    Supported layouts: two deltas at -a, +a with equal strengths, or three
    deltas at (-a, b, a) with equal outer strengths.
    """

    positions: tuple[float, ...]
    strengths: tuple[float, ...]

    def __post_init__(self) -> None:
        positions = tuple(float(x) for x in self.positions)
        strengths = tuple(float(g) for g in self.strengths)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "strengths", strengths)
        if len(positions) != len(strengths):
            raise ValueError("positions and strengths must have equal length")
        if len(positions) not in (2, 3):
            raise ValueError("only double (2) and triple (3) delta layouts are supported")
        if any(right <= left for left, right in zip(positions, positions[1:])):
            raise ValueError("positions must be strictly increasing")
        a = positions[-1]
        if a <= 0 or positions[0] != -a:
            raise ValueError("outer deltas must sit symmetrically at -a, +a with a > 0")
        if strengths[0] != strengths[-1]:
            raise ValueError("outer strengths must be equal")

    @classmethod
    def double(cls, gamma: float, a: float = 1.0) -> "DeltaPotential":
        return cls((-a, a), (gamma, gamma))

    @classmethod
    def triple(cls, gamma: float, beta: float, a: float = 1.0, b: float = 0.0) -> "DeltaPotential":
        return cls((-a, b, a), (gamma, beta, gamma))

    @classmethod
    def from_params(cls, params: DimensionlessParams, structure: str, a: float = 1.0) -> "DeltaPotential":
        gamma = params.alpha / a
        if structure == "double":
            return cls.double(gamma, a)
        if structure == "triple":
            return cls.triple(gamma, params.epsilon * gamma, a, params.b_over_a * a)
        raise ValueError(f"unknown structure {structure!r}")

    @property
    def half_width(self) -> float:
        return self.positions[-1]

    @property
    def is_double(self) -> bool:
        return len(self.positions) == 2

    def to_dimensionless(self) -> DimensionlessParams:
        a = self.half_width
        gamma = self.strengths[0]
        if self.is_double:
            return DimensionlessParams(alpha=gamma * a)
        if gamma == 0:
            raise ValueError("outer strength must be nonzero for the dimensionless reduction")
        return DimensionlessParams(
            alpha=gamma * a,
            epsilon=self.strengths[1] / gamma,
            b_over_a=self.positions[1] / a,
        )


def reduced_q(k: complex, gamma: float) -> complex:
    """Dimensionless wave number q = -2ik/gamma; equals 2*kappa/gamma for k = i*kappa."""
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    return -2j * complex(k) / gamma


def reduced_s(k: complex, a: float) -> complex:
    """Dimensionless wave number s = -2ika; satisfies s = q * (gamma * a) for any k."""
    if a <= 0:
        raise ValueError("half-width a must be positive")
    return -2j * complex(k) * a
