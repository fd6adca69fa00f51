"""Two-branch bipartite pure states with nonorthogonal components.

A state ``mu |a>|b> + nu |c>|d>`` is fully described, as far as its
entanglement goes, by the two coefficients and the two overlaps
``p = <a|c>`` and ``q = <b|d>``.  Coefficients are stored unnormalized.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateState, InvalidState, LinearlyDependent, ZeroState

#: default linear-dependence threshold on 1 - |overlap|
LINDEP_EPS = 1e-12

_OVERLAP_SLACK = 1e-12
_DEGENERATE_RTOL = 1e-13
_REALITY_RTOL = 1e-15


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class OverlapState:
    """Coefficients and component overlaps of ``mu|a>|b> + nu|c>|d>``.

    >>> OverlapState(1, 1, 0.5, 0.5).norm_squared()
    2.5
    """

    mu: complex
    nu: complex
    p: complex
    q: complex

    def __post_init__(self):
        for name in ("mu", "nu", "p", "q"):
            value = complex(getattr(self, name))
            if not _finite(value):
                raise InvalidState(f"{name} is not finite: {value!r}")
            object.__setattr__(self, name, value)
        if abs(self.p) > 1 + _OVERLAP_SLACK or abs(self.q) > 1 + _OVERLAP_SLACK:
            raise InvalidState("overlap modulus exceeds 1")
        if self.mu == 0 and self.nu == 0:
            raise DegenerateState("mu and nu are both zero")
        # raises DegenerateState for the zero vector
        self.norm_squared()

    def cross_term(self) -> complex:
        """``mu nu* p* q* + mu* nu p q`` as two separately rounded products."""
        mu, nu, p, q = self.mu, self.nu, self.p, self.q
        return mu * nu.conjugate() * p.conjugate() * q.conjugate() + mu.conjugate() * nu * p * q

    def norm_squared(self) -> float:
        mu, nu = self.mu, self.nu
        diag = abs(mu) ** 2 + abs(nu) ** 2
        cross = self.cross_term()
        scale = diag + abs(cross)
        if abs(cross.imag) > _REALITY_RTOL * scale:
            raise AssertionError(f"cross term is not real: {cross!r}")
        value = diag + cross.real
        if value <= _DEGENERATE_RTOL * diag:
            raise DegenerateState("state vector vanishes (zero norm)")
        return value

    def swapped(self) -> OverlapState:
        """Exchange the roles of the two subsystems."""
        return OverlapState(self.mu, self.nu, self.q, self.p)


def normalization_constant(s: OverlapState) -> float:
    return 1.0 / math.sqrt(s.norm_squared())


def concurrence_closed_form(s: OverlapState) -> float:
    """Concurrence from the coefficients and overlaps, no linear algebra."""
    num = 2 * abs(s.mu * s.nu) * math.sqrt((1 - abs(s.p) ** 2) * (1 - abs(s.q) ** 2))
    return min(1.0, num / s.norm_squared())


def canonical_matrix(s: OverlapState, eps: float = LINDEP_EPS) -> np.ndarray:
    """2x2 amplitudes of the state in a Gram-Schmidt basis of each subsystem.

    Subsystem 1 uses ``{|a>, (|c> - p|a>)/sqrt(1-|p|^2)}``, subsystem 2 the
    analogous pair built from ``|b>, |d>`` and ``q``.
    """
    if abs(s.p) >= 1 - eps or abs(s.q) >= 1 - eps:
        raise LinearlyDependent("component kets are (nearly) parallel")
    sp = math.sqrt(1 - abs(s.p) ** 2)
    sq = math.sqrt(1 - abs(s.q) ** 2)
    mu, nu, p, q = s.mu, s.nu, s.p, s.q
    return np.array(
        [[mu + nu * p * q, nu * p * sq],
         [nu * q * sp, nu * sp * sq]],
        dtype=complex,
    )


def schmidt_weights(m: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Squared singular values of ``m`` normalized to unit sum."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or 0 in m.shape:
        raise ValueError("coefficient matrix must be a non-empty 2-d array")
    sv = np.linalg.svd(m, compute_uv=False)
    total = float(np.sum(sv * sv))
    if not total > tol:
        raise ZeroState("coefficient matrix has zero norm")
    return (sv * sv) / total


def concurrence_oracle(m: np.ndarray) -> float:
    """I-concurrence ``sqrt(2(1 - sum lambda^4))`` from the singular values.

    Evaluated as ``2 sqrt(sum_{i<j} w_i w_j)`` on the Schmidt weights ``w``,
    which is the same quantity without the cancellation in ``1 - sum w^2``.
    Bounded by 1 for Schmidt rank <= 2 (every two-branch state); larger ranks
    reach up to ``sqrt(2(1 - 1/r))``.
    """
    m = np.asarray(m, dtype=complex)
    w = schmidt_weights(m)
    # second elementary symmetric polynomial, all terms non-negative
    e1 = 0.0
    e2 = 0.0
    for x in w:
        e2 += e1 * x
        e1 += x
    c = 2.0 * math.sqrt(e2)
    return min(1.0, c) if min(m.shape) <= 2 else c


def entanglement_entropy(m: np.ndarray) -> float:
    """Base-2 von Neumann entropy of either reduced state."""
    w = schmidt_weights(m)
    w = w[w > 0]
    return float(max(0.0, -np.sum(w * np.log2(w))))


def global_phase(s: OverlapState, phi: float) -> OverlapState:
    u = cmath.exp(1j * phi)
    return OverlapState(u * s.mu, u * s.nu, s.p, s.q)


def entropy_from_concurrence(c: float) -> float:
    """Entropy of a Schmidt-rank-2 state with concurrence ``c``."""
    c = min(1.0, max(0.0, c))
    lo = c * c / (2 * (1 + math.sqrt(1 - c * c)))
    if lo <= 0:
        return 0.0
    hi = 1 - lo
    return -(lo * math.log2(lo) + hi * math.log2(hi))
