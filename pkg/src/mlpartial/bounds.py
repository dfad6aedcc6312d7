"""Closed-form bound constants and the inequality checks behind them.

For ``alpha >= 1, beta >= 1`` the coefficient sums obey
``sum A_n <= (beta+1)/beta^2`` and ``sum (n+1) A_n <= (3 beta + 2)/beta^2``.
Each ratio lower bound is equivalent to ``|w(z)| < 1`` for a Moebius witness
``w`` with ``(1+w)/(1-w) = scale * ratio - shift``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisError, SingularDenominatorError
from .series import (
    ComplexLike,
    DENOMINATOR_GUARD,
    RatioCase,
    RatioKind,
    _as_disk_points,
    _unwrap,
    partial_series,
    tail_series,
)
from .special import CoefficientTable

_SQRT5 = math.sqrt(5.0)
_SQRT17 = math.sqrt(17.0)
GOLDEN = (1.0 + _SQRT5) / 2.0
DERIV_THRESHOLD = (3.0 + _SQRT17) / 2.0


def thresholds() -> tuple[float, float]:
    """Minimal beta for the value-ratio and derivative-ratio bounds."""
    return GOLDEN, DERIV_THRESHOLD


def case_threshold(kind: RatioKind) -> float:
    return DERIV_THRESHOLD if RatioKind(kind).is_derivative else GOLDEN


def _require_beta_ge_1(beta: float) -> None:
    if not beta >= 1.0:
        raise HypothesisError(f"modulus bounds need beta >= 1, got {beta!r}", threshold=1.0)


def lemma_modulus_bound(beta: float) -> float:
    """Upper bound ``(beta^2 + beta + 1)/beta^2`` on ``|E(z)|`` over the disk."""
    _require_beta_ge_1(beta)
    return (beta * beta + beta + 1.0) / (beta * beta)


def lemma_derivative_bound(beta: float) -> float:
    """Upper bound ``(beta^2 + 3 beta + 2)/beta^2`` on ``|E'(z)|`` over the disk."""
    _require_beta_ge_1(beta)
    return (beta * beta + 3.0 * beta + 2.0) / (beta * beta)


def raw_bound(kind: RatioKind, beta: float) -> float:
    """The bound formula for ``kind`` without checking its hypothesis."""
    kind = RatioKind(kind)
    b2 = beta * beta
    if kind is RatioKind.FULL_OVER_PARTIAL:
        return (b2 - beta - 1.0) / b2
    if kind is RatioKind.PARTIAL_OVER_FULL:
        return b2 / (b2 + beta + 1.0)
    if kind is RatioKind.DERIV_FULL_OVER_PARTIAL:
        return (b2 - 3.0 * beta - 2.0) / b2
    return b2 / (b2 + 3.0 * beta + 2.0)


@dataclass(frozen=True)
class TheoremBound:
    kind: RatioKind
    beta: float
    value: float
    threshold: float


def theorem_bound(kind: RatioKind, beta: float, permissive: bool = False) -> TheoremBound:
    """Lower bound on ``Re(ratio)``, independent of alpha and m.

    Raises :class:`HypothesisError` below the case threshold unless
    ``permissive`` is set, in which case the raw formula is returned.
    """
    kind = RatioKind(kind)
    threshold = case_threshold(kind)
    if not permissive and not beta >= threshold:
        raise HypothesisError(
            f"{kind.value} bound requires beta >= {threshold:.10f}, got {beta!r}",
            threshold=threshold,
        )
    return TheoremBound(kind, float(beta), raw_bound(kind, beta), threshold)


def moebius_constants(kind: RatioKind, beta: float) -> tuple[float, float]:
    """``(scale, shift)`` with ``(1+w)/(1-w) = scale * ratio - shift``; scale - shift = 1."""
    kind = RatioKind(kind)
    b2 = beta * beta
    denom = 3.0 * beta + 2.0 if kind.is_derivative else beta + 1.0
    if kind.full_in_numerator:
        scale = b2 / denom
    else:
        scale = (b2 + denom) / denom
    return scale, scale - 1.0


def check_tail_inequality(table: CoefficientTable, m: int, weighted: bool = False) -> tuple[float, bool]:
    """Evaluate ``sum_{n<=m} c_n + k sum_{n>m} c_n`` and test it against 1.

    ``c_n = A_n`` with ``k = beta^2/(beta+1)``, or ``c_n = (n+1) A_n`` with
    ``k = beta^2/(3 beta + 2)`` when ``weighted``.  The certified table tail is
    included, so the returned value is an upper bound on the true sum.
    """
    beta = table.params.beta
    n_max = max(m, table.truncation_index)
    coeffs = table.coefficients(n_max)
    if weighted:
        coeffs = tuple((n + 1) * a for n, a in enumerate(coeffs, start=1))
        factor = beta * beta / (3.0 * beta + 2.0)
        tail = table.weighted_tail_bound
    else:
        factor = beta * beta / (beta + 1.0)
        tail = table.tail_bound
    head = math.fsum(coeffs[:m])
    rest = math.fsum(coeffs[m:]) + tail
    lhs = head + factor * rest
    return lhs, lhs <= 1.0 + 1e-10


def _witness_parts(table: CoefficientTable, case: RatioCase, pts: np.ndarray):
    kind = case.kind
    deriv = kind.is_derivative
    scale, shift = moebius_constants(kind, table.params.beta)
    part = partial_series(table, case.m, pts, derivative=deriv)
    tail = tail_series(table, case.m, pts, derivative=deriv)
    if kind.full_in_numerator:
        # w = k T / (2 P + k T)
        num = scale * tail
        den = 2.0 * part + scale * tail
    else:
        # w = -k' T / (2 P + (1 - shift') T)
        num = -scale * tail
        den = 2.0 * part + (1.0 - shift) * tail
    return num, den, scale


def w_witness(
    table: CoefficientTable,
    case: RatioCase,
    z: ComplexLike,
    guard: float = DENOMINATOR_GUARD,
) -> ComplexLike:
    """Moebius witness ``w(z)`` of the given ratio case."""
    theorem_bound(case.kind, table.params.beta)
    pts = _as_disk_points(z)
    num, den, _ = _witness_parts(table, case, pts)
    if np.any(np.abs(den) < guard):
        raise SingularDenominatorError(f"witness denominator vanishes for {case.kind.value}")
    return _unwrap(z, num / den)


def witness_modulus_bound(table: CoefficientTable, case: RatioCase, z: ComplexLike) -> ComplexLike:
    """Upper bound on ``|w(z)|`` that absorbs the truncated series tail."""
    theorem_bound(case.kind, table.params.beta)
    pts = _as_disk_points(z)
    num, den, scale = _witness_parts(table, case, pts)
    tail = table.weighted_tail_bound if case.kind.is_derivative else table.tail_bound
    # T enters both numerator (weight scale) and denominator (weight <= scale).
    slack = scale * tail
    low = np.abs(den) - slack
    bound = np.where(low > 0, (np.abs(num) + slack) / np.where(low > 0, low, 1.0), np.inf)
    if np.ndim(z) == 0 and not isinstance(z, np.ndarray):
        return float(bound)
    return bound
