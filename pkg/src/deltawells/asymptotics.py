"""Closed-form approximations and bound-state counting predicates.

These never feed the exact solver; they seed and validate it, and reproduce
the dashed/dotted comparison curves of the bound-state plots.
"""
from __future__ import annotations

import math

__all__ = [
    "double_large_alpha",
    "double_small",
    "triple_even_small",
    "triple_large_alpha",
    "count_bound_states",
]


def double_large_alpha(alpha: float) -> tuple[float, float]:
    """Quasi-degenerate doublet q_+- ~= 1 +- e^{-alpha} of the wide double well."""
    if alpha <= 0:
        raise ValueError("intended for alpha > 0")
    e = math.exp(-alpha)
    return 1.0 + e, 1.0 - e


def double_small(alpha: float) -> tuple[float, float]:
    """Small-|q*alpha| expansion: q_+ ~= 2/(alpha+1), q_- ~= 2(alpha-1)/alpha^2.

    The odd value crosses zero exactly at alpha = 1, the bound-state threshold.
    """
    return 2.0 / (alpha + 1.0), 2.0 * (alpha - 1.0) / (alpha * alpha)


def triple_even_small(alpha: float, epsilon: float) -> float:
    """Small-q approximation q ~= (2 - eps(alpha-1)) / (1 + alpha(1 - alpha*eps/2)).

    Its zero reproduces the even existence threshold alpha = 1 + 2/eps.
    Returns a signed infinity where the denominator vanishes.
    """
    num = 2.0 - epsilon * (alpha - 1.0)
    den = 1.0 + alpha * (1.0 - alpha * epsilon / 2.0)
    if den == 0.0:
        return math.copysign(math.inf, num)
    return num / den


def triple_large_alpha(alpha: float, epsilon: float) -> tuple[float, float]:
    """Isolated-well asymptotics of the two even states of the symmetric triple.

    q0 ~= 1 + ((1+eps)/(1-eps)) e^{-alpha} for the ground state and
    q2 ~= eps - (2 eps/(1-eps)) e^{-eps*alpha} for the second excited state,
    the leading corrections of the quadratic obtained when the exponential
    coupling term is small.  eps = 1 is degenerate and unsupported.
    """
    if epsilon == 1.0:
        raise ValueError("epsilon = 1 is degenerate; no closed-form asymptotic")
    q0 = 1.0 + (1.0 + epsilon) / (1.0 - epsilon) * math.exp(-alpha)
    q2 = epsilon - 2.0 * epsilon / (1.0 - epsilon) * math.exp(-epsilon * alpha)
    return q0, q2


def count_bound_states(alpha: float, epsilon: float | None = None) -> int:
    """Predicted number of bound states of the double (epsilon None) or the
    symmetric triple structure.

    Double: the even ground state exists for any alpha > 0, the odd one for
    alpha > 1.  Triple with a middle well (eps > 0): additionally a second
    even state for alpha > 1 + 2/eps.  Triple with a middle barrier (eps < 0):
    the odd state is insensitive to the centred barrier, while the even ground
    state survives any alpha > 0 unless the barrier outweighs both wells
    (eps < -2), in which case it too requires alpha > 1 + 2/eps.
    """
    if epsilon is None or epsilon == 0.0:
        n = 1 if alpha > 0 else 0
        return n + (1 if alpha > 1 else 0)
    n = 1 if alpha > 1 else 0  # odd state, blind to the middle delta
    if epsilon > 0:
        if alpha > 0:
            n += 1
        if alpha > 1.0 + 2.0 / epsilon:
            n += 1
        return n
    if epsilon >= -2.0:
        ground = alpha > 0
    else:
        ground = alpha > 1.0 + 2.0 / epsilon
    return n + (1 if ground else 0)
