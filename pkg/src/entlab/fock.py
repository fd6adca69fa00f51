"""Truncated number-basis representation of two-mode coherent superpositions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .bipartite import concurrence_oracle
from .coherent import (
    CoherentPairState,
    as_overlap_state,
    cat_antisymmetric,
    cat_triple,
    quartet,
)
from .errors import CutoffOverflow, InvalidVariant, ZeroState

MAX_MODULUS = 30.0
DEFAULT_EPS = 1e-12

_S = 1 / math.sqrt(2)
_W = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))


@dataclass(frozen=True)
class TruncatedFockState:
    cutoff: int
    amps: np.ndarray
    captured_norm: float


def truncation_cutoff(labels: Iterable[complex], eps: float = DEFAULT_EPS) -> int:
    """Photon-number cutoff ``max(20, ceil(M^2 + 10 M + 10))``, ``M = max|label|``."""
    labels = list(labels)
    if not labels:
        raise ValueError("need at least one label")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    m = max(abs(complex(z)) for z in labels)
    if m > MAX_MODULUS:
        raise CutoffOverflow(f"label modulus {m:g} exceeds {MAX_MODULUS:g}")
    return max(20, math.ceil(m * m + 10 * m + 10))


def coherent_vector(alpha: complex, cutoff: int) -> np.ndarray:
    """``e^{-|a|^2/2} a^n / sqrt(n!)`` for ``n = 0..cutoff`` by recurrence."""
    alpha = complex(alpha)
    out = np.empty(cutoff + 1, dtype=complex)
    out[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, cutoff + 1):
        out[n] = out[n - 1] * (alpha / math.sqrt(n))
    return out


def fock_coefficients(s: CoherentPairState, cutoff: int | None = None) -> TruncatedFockState:
    if cutoff is None:
        cutoff = truncation_cutoff(s.labels)
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    if (cutoff + 1) ** 2 > 4_000_000:
        raise CutoffOverflow(f"cutoff {cutoff} exceeds the amplitude budget")
    a, b, g, d = (coherent_vector(z, cutoff) for z in s.labels)
    amps = s.mu * np.outer(a, b) + s.nu * np.outer(g, d)
    exact = as_overlap_state(s).norm_squared()
    captured = float(np.vdot(amps, amps).real) / exact
    return TruncatedFockState(cutoff, amps, min(1.0, captured))


def _grid(x: Union[TruncatedFockState, np.ndarray]) -> np.ndarray:
    return x.amps if isinstance(x, TruncatedFockState) else np.asarray(x, dtype=complex)


def numeric_concurrence(t: Union[TruncatedFockState, np.ndarray]) -> float:
    return concurrence_oracle(_grid(t))


def parity_on_grid(t: Union[TruncatedFockState, np.ndarray]) -> np.ndarray:
    """``1 (x) (-1)^n`` on an amplitude grid: negate odd columns."""
    amps = _grid(t).copy()
    amps[:, 1::2] *= -1
    return amps


def bell_like_limit(which: int) -> np.ndarray:
    """Two-qubit limits, indexed 1..4::

        1: (e^{i pi/4}|01> - e^{-i pi/4}|10>)/sqrt2
        2: (e^{i pi/4}|01> + e^{-i pi/4}|10>)/sqrt2
        3: (|01> - |10>)/sqrt2
        4: (|01> + |10>)/sqrt2
    """
    if which not in (1, 2, 3, 4):
        raise InvalidVariant(f"Bell-like state must be 1..4, got {which!r}")
    up, down, sgn = {
        1: (_W, _W.conjugate(), -1),
        2: (_W, _W.conjugate(), 1),
        3: (1, 1, -1),
        4: (1, 1, 1),
    }[which]
    m = np.zeros((2, 2), dtype=complex)
    m[0, 1] = up * _S
    m[1, 0] = sgn * down * _S
    return m


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """``|<a|b>|^2 / (|a|^2 |b|^2)``, zero-padding the smaller grid."""
    a, b = _grid(a), _grid(b)
    rows = max(a.shape[0], b.shape[0])
    cols = max(a.shape[1], b.shape[1])
    pa = np.zeros((rows, cols), dtype=complex)
    pb = np.zeros((rows, cols), dtype=complex)
    pa[: a.shape[0], : a.shape[1]] = a
    pb[: b.shape[0], : b.shape[1]] = b
    na = float(np.vdot(pa, pa).real)
    nb = float(np.vdot(pb, pb).real)
    if na <= 0 or nb <= 0:
        raise ZeroState("cannot take fidelity with a zero grid")
    return min(1.0, float(abs(np.vdot(pa, pb)) ** 2 / (na * nb)))


# Limits reached as alpha -> 0, worked out from the first-order (m + n = 1)
# amplitudes.  Members 2 and 3 of the quartet go to the third and second
# Bell-like states; the two cat states are antisymmetric / symmetric.
LIMIT_TARGET = {1: 1, 2: 3, 3: 2, 4: 4, "cat_antisymmetric": 3, "cat_triple": 4}

_STATE_BUILDERS = {
    "cat_antisymmetric": cat_antisymmetric,
    "cat_triple": cat_triple,
}


def limit_state(which, alpha: float) -> CoherentPairState:
    """Quartet member 1..4, or one of the named cat states, at ``alpha``."""
    if which in (1, 2, 3, 4):
        return quartet(alpha, which)
    try:
        return _STATE_BUILDERS[which](alpha)
    except KeyError:
        raise InvalidVariant(f"unknown limit family {which!r}") from None


@dataclass(frozen=True)
class ScanRow:
    alpha: float
    infidelity: float
    concurrence: float
    captured_norm: float


def limit_convergence_scan(which, alphas: Sequence[float], target: int | None = None,
                           cutoff: int | None = None) -> list[ScanRow]:
    """Infidelity against a Bell-like state and Fock-space concurrence per ``alpha``.

    ``target`` defaults to the Bell-like state the family actually tends to.
    """
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ValueError("alphas must be non-empty")
    if any(not (0 < a <= MAX_MODULUS) for a in alphas):
        raise ValueError(f"alphas must lie in (0, {MAX_MODULUS:g}]")
    if any(x < y for x, y in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be sorted in descending order")
    if target is None:
        if which not in LIMIT_TARGET:
            raise InvalidVariant(f"unknown limit family {which!r}")
        target = LIMIT_TARGET[which]
    bell = bell_like_limit(target)
    rows = []
    for a in alphas:
        t = fock_coefficients(limit_state(which, a), cutoff)
        rows.append(ScanRow(a, 1.0 - fidelity(t.amps, bell), numeric_concurrence(t), t.captured_norm))
    return rows
