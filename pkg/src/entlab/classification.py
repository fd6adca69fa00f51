"""Maximal-entanglement and disentanglement criteria for two-branch states."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

from .bipartite import OverlapState, concurrence_closed_form
from .errors import NuZero

DEFAULT_TOL = 1e-9


class Verdict(str, enum.Enum):
    MES_NONORTHOGONAL = "mes_nonorthogonal"
    MES_ORTHOGONAL = "mes_orthogonal"
    DISENTANGLED = "disentangled"
    PARTIAL = "partial"

    @property
    def is_mes(self) -> bool:
        return self in (Verdict.MES_NONORTHOGONAL, Verdict.MES_ORTHOGONAL)


class Reason(str, enum.Enum):
    MU_ZERO = "mu_zero"
    NU_ZERO = "nu_zero"
    SUBSYSTEM1_PARALLEL = "subsystem1_parallel"
    SUBSYSTEM2_PARALLEL = "subsystem2_parallel"
    # concurrence below tolerance with none of the exact conditions met
    VANISHING_CONCURRENCE = "vanishing_concurrence"


def principal_angle(x: float) -> float:
    """Map an angle into (-pi, pi]."""
    y = math.remainder(x, 2 * math.pi)
    return math.pi if y <= -math.pi else y


def _arg(z: complex) -> float:
    return 0.0 if z == 0 else principal_angle(cmath.phase(z))


@dataclass(frozen=True)
class PhaseParameters:
    """``mu = k nu e^{i theta}``, ``p = sin(a) e^{i theta1}``, ``q = sin(b) e^{i theta2}``."""

    k: float
    theta: float
    a: float
    b: float
    theta1: float
    theta2: float


@dataclass(frozen=True)
class ClassificationReport:
    verdict: Verdict
    concurrence: float
    params: Optional[PhaseParameters]
    residual: float
    reason: Optional[Reason] = None


def phase_parameters(s: OverlapState, eps: float = 1e-12) -> PhaseParameters:
    if abs(s.nu) <= eps * max(abs(s.mu), abs(s.nu)):
        raise NuZero("nu vanishes; relative phase undefined")
    ratio = s.mu / s.nu
    return PhaseParameters(
        k=abs(ratio),
        theta=_arg(ratio),
        a=math.asin(min(1.0, abs(s.p))),
        b=math.asin(min(1.0, abs(s.q))),
        theta1=_arg(s.p),
        theta2=_arg(s.q),
    )


def k_prime(k: float) -> float:
    """``(k^2 + 1)/k``; bounded below by 2."""
    return (k * k + 1) / k


def k_prime_excess(k: float) -> float:
    """``k_prime(k) - 2`` as ``(k-1)^2/k``, exact in sign for floats."""
    return (k - 1) ** 2 / k


def _modulus_mismatch(s: OverlapState) -> float:
    m, n = abs(s.mu), abs(s.nu)
    return abs(m - n) / max(m, n)


def _relative_phase(s: OverlapState) -> complex:
    """``e^{i theta}`` with ``theta = arg(mu/nu)``; 1 when undefined."""
    z = s.mu * s.nu.conjugate()
    return z / abs(z) if z != 0 else 1.0 + 0j


def nonorthogonal_gap(s: OverlapState) -> float:
    """``|p + q* e^{i theta}|``, zero on the nonorthogonal MES locus."""
    return abs(s.p + s.q.conjugate() * _relative_phase(s))


def mes_residual(s: OverlapState) -> float:
    """Distance from the nearer of the two MES conditions (0 on the MES set)."""
    mm = _modulus_mismatch(s)
    nonorth = max(mm, nonorthogonal_gap(s))
    orth = max(mm, abs(s.p), abs(s.q))
    return min(nonorth, orth)


def is_disentangled(s: OverlapState, tol: float = DEFAULT_TOL) -> tuple[bool, Optional[Reason]]:
    scale = max(abs(s.mu), abs(s.nu))
    if abs(s.mu) <= tol * scale:
        return True, Reason.MU_ZERO
    if abs(s.nu) <= tol * scale:
        return True, Reason.NU_ZERO
    if abs(s.p) > 1 - tol:
        return True, Reason.SUBSYSTEM1_PARALLEL
    if abs(s.q) > 1 - tol:
        return True, Reason.SUBSYSTEM2_PARALLEL
    return False, None


def is_mes(s: OverlapState, tol: float = DEFAULT_TOL, rel_tol: Optional[float] = None) -> ClassificationReport:
    """Classify ``s`` against the maximal-entanglement conditions.

    ``tol`` is the absolute tolerance on the overlap conditions and
    ``rel_tol`` (defaults to ``tol``) the relative tolerance on ``|mu| = |nu|``.
    The orthogonal branch wins when both could fire.
    """
    if rel_tol is None:
        rel_tol = tol
    c = concurrence_closed_form(s)
    residual = mes_residual(s)

    if c < tol:
        fired, reason = is_disentangled(s, tol)
        return ClassificationReport(
            Verdict.DISENTANGLED, c, _params_or_none(s), residual,
            reason if fired else Reason.VANISHING_CONCURRENCE,
        )

    params = phase_parameters(s)
    equal_moduli = _modulus_mismatch(s) < rel_tol
    if equal_moduli and abs(s.p) < tol and abs(s.q) < tol:
        verdict = Verdict.MES_ORTHOGONAL
    elif equal_moduli and nonorthogonal_gap(s) < tol:
        verdict = Verdict.MES_NONORTHOGONAL
    else:
        verdict = Verdict.PARTIAL

    # 1 - C is quadratic in the distance from the MES set, so an MES verdict
    # must come with C within tolerance of 1.  The converse is not asserted:
    # states a little outside the conditions can still have 1 - C < tol.
    if verdict.is_mes and not c > 1 - 10 * max(tol, rel_tol):
        raise AssertionError(f"MES verdict with concurrence {c!r}")
    return ClassificationReport(verdict, c, params, residual)


def _params_or_none(s: OverlapState) -> Optional[PhaseParameters]:
    try:
        return phase_parameters(s)
    except NuZero:
        return None
