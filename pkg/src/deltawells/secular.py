"""Characteristic (secular) functions whose zeros are the resonant-state wave numbers.

Everything is dimensionless: z = k*a, alpha = gamma*a, epsilon = beta/gamma,
b_over_a = b/a.  On the imaginary axis z = i*s/2, where s = -2iz is real, the
bound (s > 0) and anti-bound (s < 0) sectors admit explicit inverse branch
functions alpha(s), epsilon(s) and beta*a(s), provided here as well so sweep
curves can be drawn without solving any transcendental equation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .potentials import DimensionlessParams
from .states import Parity

__all__ = [
    "PoleError",
    "SecularEquation",
    "FAMILIES",
    "residual_double",
    "residual_double_dz",
    "residual_triple_symmetric_even",
    "residual_triple_symmetric_even_dz",
    "residual_triple_general",
    "residual_triple_general_dz",
    "alpha_of_s_double",
    "alpha_of_s_triple",
    "epsilon_of_s",
    "beta_a_of_s",
]

FAMILIES = ("double_even", "double_odd", "triple_sym_even", "triple_general")


class PoleError(ArithmeticError):
    """Evaluation exactly at a pole of a characteristic function (not a root)."""


def _parity_sign(parity) -> float:
    parity = Parity(parity) if not isinstance(parity, Parity) else parity
    if parity is Parity.EVEN:
        return 1.0
    if parity is Parity.ODD:
        return -1.0
    raise ValueError("parity must be even or odd")


def _guard_pole(denom, what: str) -> None:
    # Scalar path only; array callers mask the resulting inf/nan themselves.
    if np.ndim(denom) == 0 and complex(denom) == 0:
        raise PoleError(what)


def residual_double(z, alpha: float, parity):
    """F(z) = 1 + 2iz/alpha +- e^{2iz}, upper sign even.  Entire in z."""
    sign = _parity_sign(parity)
    return 1.0 + 2j * z / alpha + sign * np.exp(2j * z)


def residual_double_dz(z, alpha: float, parity):
    sign = _parity_sign(parity)
    return 2j / alpha + sign * 2j * np.exp(2j * z)


def residual_triple_symmetric_even(z, alpha: float, epsilon: float):
    """Even-sector characteristic function of the symmetric triple (b = 0).

    F(z) = 1 + 2iz/alpha - [(eps*alpha - 2iz)/(eps*alpha + 2iz)] e^{2iz}.
    Has a pole at z = i*eps*alpha/2; for epsilon -> 0 the prefactor tends to
    -1 and F reduces to the even double-structure residual.
    """
    denom = epsilon * alpha + 2j * z
    _guard_pole(denom, "prefactor pole at z = i*epsilon*alpha/2")
    ratio = (epsilon * alpha - 2j * z) / denom
    return 1.0 + 2j * z / alpha - ratio * np.exp(2j * z)


def residual_triple_symmetric_even_dz(z, alpha: float, epsilon: float):
    denom = epsilon * alpha + 2j * z
    _guard_pole(denom, "prefactor pole at z = i*epsilon*alpha/2")
    ratio = (epsilon * alpha - 2j * z) / denom
    dratio = -4j * epsilon * alpha / (denom * denom)
    return 2j / alpha - (dratio + 2j * ratio) * np.exp(2j * z)


def residual_triple_general(z, alpha: float, epsilon: float, b_over_a: float):
    """Characteristic function of the triple with the middle delta at x = b.

    F(z) = xi^2 (1 - eta) - 2 xi cos(2 z b/a) + 1 + eta with
    xi = e^{2iz} / (1 + 2iz/alpha) and eta = 2iz/(epsilon*alpha).
    Zeros are the parity-mixed resonant states; xi has a pole at z = i*alpha/2.
    """
    if epsilon == 0:
        raise ValueError("epsilon = 0 describes a double structure; use residual_double")
    denom = alpha + 2j * z
    _guard_pole(denom, "xi pole at z = i*alpha/2")
    xi = alpha * np.exp(2j * z) / denom
    eta = 2j * z / (epsilon * alpha)
    return xi * xi * (1.0 - eta) - 2.0 * xi * np.cos(2.0 * z * b_over_a) + 1.0 + eta


def residual_triple_general_dz(z, alpha: float, epsilon: float, b_over_a: float):
    if epsilon == 0:
        raise ValueError("epsilon = 0 describes a double structure; use residual_double")
    denom = alpha + 2j * z
    _guard_pole(denom, "xi pole at z = i*alpha/2")
    xi = alpha * np.exp(2j * z) / denom
    dxi = 2j * xi * (alpha - 1.0 + 2j * z) / denom
    eta = 2j * z / (epsilon * alpha)
    deta = 2j / (epsilon * alpha)
    cos_b = np.cos(2.0 * z * b_over_a)
    sin_b = np.sin(2.0 * z * b_over_a)
    return (
        2.0 * xi * dxi * (1.0 - eta)
        - xi * xi * deta
        - 2.0 * dxi * cos_b
        + 4.0 * b_over_a * xi * sin_b
        + deta
    )


# ---------------------------------------------------------------------------
# Explicit on-axis branch functions (real s = -2iz).
# ---------------------------------------------------------------------------

def alpha_of_s_double(s: float, parity) -> float:
    """Inverse branch alpha(s) = s / (1 +- e^{-s}) of the on-axis double equation.

    The odd branch has a removable point at s = 0 with limit 1 (the threshold
    where the odd bound state disappears).
    """
    sign = _parity_sign(parity)
    if sign > 0:
        return s / (1.0 + math.exp(-s))
    if s == 0.0:
        return 1.0
    return s / (-math.expm1(-s))


def alpha_of_s_triple(s: float, epsilon: float, branch: str) -> float | None:
    """Even-sector branches alpha_+-(s) of the symmetric triple.

    alpha = 2s / (1 + eps + e^{-s} +- sqrt((1-eps)^2 + 2(1+3eps)e^{-s} + e^{-2s})).
    Returns None where the radicand is negative (no real branch).  At s = 0
    the branch with vanishing denominator tends to the existence threshold
    1 + 2/eps; the other branch tends to 0.
    """
    if branch not in ("plus", "minus"):
        raise ValueError("branch must be 'plus' or 'minus'")
    sgn = 1.0 if branch == "plus" else -1.0
    e = math.exp(-s)
    radicand = (1.0 - epsilon) ** 2 + 2.0 * (1.0 + 3.0 * epsilon) * e + e * e
    if radicand < 0.0:
        return None
    root = math.sqrt(radicand)
    if s == 0.0:
        # radicand collapses to (2 + eps)^2, so root = |2 + eps|
        denom0 = 2.0 + epsilon + sgn * root
        if denom0 == 0.0:
            return 1.0 + 2.0 / epsilon
        return 0.0
    denom = 1.0 + epsilon + e + sgn * root
    if denom == 0.0:
        return math.copysign(math.inf, s)
    return 2.0 * s / denom


def epsilon_of_s(s: float, alpha: float) -> float:
    """Relative middle strength eps(s) = (s/alpha)(1 - s/alpha + e^{-s})/(1 - s/alpha - e^{-s}).

    Returns a signed infinity where the denominator vanishes (the odd-sector
    asymptote, to which the on-axis states are insensitive at b = 0).  The
    removable point s = 0 evaluates to the threshold value 2/(alpha - 1).
    """
    if s == 0.0:
        if alpha == 1.0:
            return math.inf
        return 2.0 / (alpha - 1.0)
    x = s / alpha
    num = x * (1.0 - x + math.exp(-s))
    den = -math.expm1(-s) - x
    if den == 0.0:
        return math.copysign(math.inf, num)
    return num / den


def beta_a_of_s(s: float, alpha: float, b_over_a: float) -> float:
    """Middle strength beta*a as an explicit function of s for the general triple.

    beta*a = s (1 - xi^2) / (1 - 2 xi cosh(s b/a) + xi^2), xi = e^{-s}/(1 - s/alpha).
    Removable points: s = alpha (xi -> inf, limit -s) and s = 0 (limit
    2w/(w^2 - (b/a)^2) with w = 1 - 1/alpha).  A vanishing denominator
    elsewhere yields a signed infinity marker.
    """
    if s == alpha:
        return -float(s)
    if s == 0.0:
        w = 1.0 - 1.0 / alpha
        den0 = w * w - b_over_a * b_over_a
        if den0 == 0.0:
            return math.copysign(math.inf, w)
        return 2.0 * w / den0
    xi = math.exp(-s) / (1.0 - s / alpha)
    c = math.cosh(s * b_over_a)
    num = s * (1.0 - xi * xi)
    den = 1.0 - 2.0 * xi * c + xi * xi
    if den == 0.0:
        return math.copysign(math.inf, num)
    return num / den


# ---------------------------------------------------------------------------
# Family dispatcher used by the root finder and sweeps.
# ---------------------------------------------------------------------------

_FAMILY_PARITY = {
    "double_even": Parity.EVEN,
    "double_odd": Parity.ODD,
    "triple_sym_even": Parity.EVEN,
    "triple_general": Parity.MIXED,
}


@dataclass(frozen=True)
class SecularEquation:
    """One parity sector of one potential family, ready for Newton iteration."""

    family: str
    params: DimensionlessParams

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "triple_sym_even" and self.params.b_over_a != 0.0:
            raise ValueError("triple_sym_even requires b = 0")
        if self.family == "triple_general" and self.params.epsilon == 0.0:
            raise ValueError("triple_general requires nonzero epsilon")

    @property
    def parity(self) -> Parity:
        return _FAMILY_PARITY[self.family]

    def residual(self, z):
        p = self.params
        if self.family == "double_even":
            return residual_double(z, p.alpha, Parity.EVEN)
        if self.family == "double_odd":
            return residual_double(z, p.alpha, Parity.ODD)
        if self.family == "triple_sym_even":
            return residual_triple_symmetric_even(z, p.alpha, p.epsilon)
        return residual_triple_general(z, p.alpha, p.epsilon, p.b_over_a)

    def derivative(self, z):
        p = self.params
        if self.family == "double_even":
            return residual_double_dz(z, p.alpha, Parity.EVEN)
        if self.family == "double_odd":
            return residual_double_dz(z, p.alpha, Parity.ODD)
        if self.family == "triple_sym_even":
            return residual_triple_symmetric_even_dz(z, p.alpha, p.epsilon)
        return residual_triple_general_dz(z, p.alpha, p.epsilon, p.b_over_a)

    def with_param(self, name: str, value: float) -> "SecularEquation":
        """Return a copy with one swept parameter replaced.

        'beta_a' sweeps the middle strength beta*a = epsilon*alpha at fixed alpha.
        """
        p = self.params
        if name == "alpha":
            newp = replace(p, alpha=value)
        elif name == "epsilon":
            newp = replace(p, epsilon=value)
        elif name == "beta_a":
            newp = replace(p, epsilon=value / p.alpha)
        elif name == "b_over_a":
            newp = replace(p, b_over_a=value)
        else:
            raise ValueError(f"unknown sweep parameter {name!r}")
        return SecularEquation(self.family, newp)
