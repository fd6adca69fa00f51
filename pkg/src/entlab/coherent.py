"""Entangled coherent states ``mu|alpha>|beta> + nu|gamma>|delta>``.

Phases of individual kets are always folded into ``mu`` and ``nu``; a stored
label is a bare coherent amplitude.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .bipartite import OverlapState
from .classification import principal_angle
from .errors import ConstraintViolated, InvalidState, InvalidVariant, LinearlyDependent

MAX_LABEL = 1e4
DEFAULT_TOL = 1e-9

# Smallest exponent exp() can return as a nonzero double.
_LOG_TINY = math.log(5e-324)


def _label(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidState(f"coherent label is not finite: {z!r}")
    if abs(z) > MAX_LABEL:
        raise InvalidState(f"coherent label modulus {abs(z):g} exceeds {MAX_LABEL:g}")
    return z


def log_overlap(a: complex, g: complex) -> complex:
    """Logarithm of ``<a|g>``: ``-|a-g|^2/2 + i Im(a* g)``."""
    return complex(-abs(a - g) ** 2 / 2, (a.conjugate() * g).imag)


def coherent_overlap(a: complex, g: complex) -> complex:
    """``<a|g> = exp[-(|a|^2 + |g|^2 - 2 a* g)/2]``.

    The real part of the exponent is evaluated as ``-|a-g|^2/2`` so the result
    has modulus exactly 1 when ``a == g``.  Returns 0 on underflow.
    """
    a, g = _label(a), _label(g)
    return cmath.exp(log_overlap(a, g))


def overlap_underflows(a: complex, g: complex) -> bool:
    return log_overlap(complex(a), complex(g)).real < _LOG_TINY


@dataclass(frozen=True)
class CoherentPairState:
    mu: complex
    nu: complex
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, _label(getattr(self, name)))
        for name in ("mu", "nu"):
            z = complex(getattr(self, name))
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise InvalidState(f"{name} is not finite")
            object.__setattr__(self, name, z)
        if self.gamma == self.alpha:
            raise LinearlyDependent("gamma equals alpha")
        if self.delta == self.beta:
            raise LinearlyDependent("delta equals beta")

    @property
    def labels(self) -> tuple[complex, complex, complex, complex]:
        return (self.alpha, self.beta, self.gamma, self.delta)


def as_overlap_state(s: CoherentPairState) -> OverlapState:
    return OverlapState(
        s.mu, s.nu,
        coherent_overlap(s.alpha, s.gamma),
        coherent_overlap(s.beta, s.delta),
    )


@dataclass(frozen=True)
class Theorem2Report:
    """Outcome of the coherent-state MES test.

    ``real_part_gap`` is ``|alpha-gamma|^2 - |beta-delta|^2``; the state with
    ``mu = nu e^{i theta}`` is maximally entangled iff the gap vanishes.
    """

    real_part_gap: float
    theta: float
    satisfiable: bool

    def relative_phase(self) -> complex:
        return cmath.exp(1j * self.theta)


def theorem2_check(alpha, beta, gamma, delta, tol: float = DEFAULT_TOL) -> Theorem2Report:
    alpha, beta, gamma, delta = map(_label, (alpha, beta, gamma, delta))
    if alpha == gamma or beta == delta:
        raise LinearlyDependent("coherent labels coincide")
    # |x|^2 + |y|^2 - 2 Re(x* y) == |x - y|^2, written without cancellation
    gap = abs(alpha - gamma) ** 2 - abs(beta - delta) ** 2
    theta = principal_angle(
        (alpha.conjugate() * gamma).imag - (beta * delta.conjugate()).imag - math.pi
    )
    return Theorem2Report(gap, theta, abs(gap) < tol)


def mes_from_labels(alpha, beta, gamma, delta, tol: float = DEFAULT_TOL) -> CoherentPairState:
    """The MES ``e^{i theta}|alpha>|beta> + |gamma>|delta>`` when the labels allow one."""
    rep = theorem2_check(alpha, beta, gamma, delta, tol)
    if not rep.satisfiable:
        raise ConstraintViolated(f"real parts differ by {rep.real_part_gap:g}")
    return CoherentPairState(rep.relative_phase(), 1.0, alpha, beta, gamma, delta)


def antisymmetric_mes(alpha, beta) -> CoherentPairState:
    """``|alpha>|beta> - |beta>|alpha>``."""
    alpha, beta = _label(alpha), _label(beta)
    if alpha == beta:
        raise LinearlyDependent("antisymmetric state needs alpha != beta")
    return CoherentPairState(1.0, -1.0, alpha, beta, beta, alpha)


def antisymmetric_normalization(alpha, beta) -> float:
    return 1.0 / math.sqrt(2 * (1 - abs(coherent_overlap(alpha, beta)) ** 2))


def same_phase_family(alpha, beta, lambda_prime: float, sign: int = 1) -> CoherentPairState:
    """``|alpha>|beta> - |(1 - l/|alpha|) alpha>|(1 -+ l/|beta|) beta>``.

    ``sign=+1`` takes the upper sign (``1 - l/|beta|``).  Each pair of labels
    stays collinear, so the relative phase is pi.  A note is attached when a
    label passes through the origin and flips direction.
    """
    alpha, beta = _label(alpha), _label(beta)
    if alpha == 0 or beta == 0:
        raise ConstraintViolated("alpha and beta must be nonzero")
    if sign not in (1, -1):
        raise InvalidVariant("sign must be +1 or -1")
    if lambda_prime == 0:
        raise LinearlyDependent("lambda' = 0 gives gamma = alpha")
    fa = 1 - lambda_prime / abs(alpha)
    fb = 1 - sign * lambda_prime / abs(beta)
    notes = []
    if fa < 0:
        notes.append("gamma_phase_folded")
    if fb < 0:
        notes.append("delta_phase_folded")
    return CoherentPairState(1.0, -1.0, alpha, beta, fa * alpha, fb * beta, tuple(notes))


def quarter_phase_family(alpha, beta, gamma_mod: float, delta_mod: float, sign: int = 1,
                         tol: float = DEFAULT_TOL) -> CoherentPairState:
    """Labels rotated by a quarter turn: ``gamma = i|gamma| alpha/|alpha|``,
    ``delta = +-i|delta| beta/|beta|``, with relative phase
    ``|alpha gamma| +- |beta delta| - pi``.
    """
    alpha, beta = _label(alpha), _label(beta)
    if alpha == 0 or beta == 0:
        raise ConstraintViolated("alpha and beta must be nonzero")
    if sign not in (1, -1):
        raise InvalidVariant("sign must be +1 or -1")
    if not (gamma_mod > 0 and delta_mod > 0):
        raise ConstraintViolated("gamma_mod and delta_mod must be positive")
    lhs = abs(alpha) ** 2 + gamma_mod ** 2
    rhs = abs(beta) ** 2 + delta_mod ** 2
    if abs(lhs - rhs) > tol * max(lhs, rhs):
        raise ConstraintViolated(
            f"|alpha|^2 + |gamma|^2 = {lhs:g} differs from |beta|^2 + |delta|^2 = {rhs:g}")
    gamma = 1j * gamma_mod * alpha / abs(alpha)
    delta = sign * 1j * delta_mod * beta / abs(beta)
    phase = abs(alpha) * gamma_mod + sign * abs(beta) * delta_mod
    return CoherentPairState(1.0, -cmath.exp(-1j * phase), alpha, beta, gamma, delta)


def quartet(alpha, which: int) -> CoherentPairState:
    """The four equal-modulus quarter-turn MES::

        1: |a>|-a>  - |ia>|ia>
        2: |a>|-a>  - e^{-2i|a|^2} |ia>|-ia>
        3: |a>|a>   - |ia>|-ia>
        4: |a>|a>   - e^{-2i|a|^2} |ia>|ia>
    """
    alpha = _label(alpha)
    if alpha == 0:
        raise ConstraintViolated("alpha must be nonzero")
    if which not in (1, 2, 3, 4):
        raise InvalidVariant(f"quartet member must be 1..4, got {which!r}")
    ia = 1j * alpha
    twist = -cmath.exp(-2j * abs(alpha) ** 2)
    return {
        1: CoherentPairState(1.0, -1.0, alpha, -alpha, ia, ia),
        2: CoherentPairState(1.0, twist, alpha, -alpha, ia, -ia),
        3: CoherentPairState(1.0, -1.0, alpha, alpha, ia, -ia),
        4: CoherentPairState(1.0, twist, alpha, alpha, ia, ia),
    }[which]


def quartet_normalization(alpha) -> float:
    x = abs(_label(alpha)) ** 2
    return 1.0 / math.sqrt(-2.0 * math.expm1(-2.0 * x))


def cat_antisymmetric(alpha) -> CoherentPairState:
    """``|a>|-a> - |-a>|a>``."""
    alpha = _label(alpha)
    return antisymmetric_mes(alpha, -alpha)


def cat_triple(alpha) -> CoherentPairState:
    """``|a>|-a> - |-a>|-3a>``, the lower-sign same-phase member at ``l = 2|a|``."""
    alpha = _label(alpha)
    return same_phase_family(alpha, -alpha, 2 * abs(alpha), sign=-1)


def cat_normalization(alpha) -> float:
    """Shared normalization of the two cat states above."""
    x = abs(_label(alpha)) ** 2
    return 1.0 / math.sqrt(-2.0 * math.expm1(-4.0 * x))


def parity_transform(s: CoherentPairState) -> CoherentPairState:
    """Apply ``1 (x) (-1)^n`` : negate both subsystem-2 labels."""
    return replace(s, beta=-s.beta, delta=-s.delta)
