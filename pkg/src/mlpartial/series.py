"""Evaluation of the normalized Mittag-Leffler function on the closed unit disk.

All evaluators accept a complex scalar or a numpy array of complex points and
return the same shape.  Sums run in ascending order with Kahan compensation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, SingularDenominatorError
from .special import CoefficientTable

ComplexLike = Union[complex, float, np.ndarray]

DISK_SLACK = 1e-12
DENOMINATOR_GUARD = 1e-12


class RatioKind(str, enum.Enum):
    FULL_OVER_PARTIAL = "full-over-partial"
    PARTIAL_OVER_FULL = "partial-over-full"
    DERIV_FULL_OVER_PARTIAL = "deriv-full-over-partial"
    DERIV_PARTIAL_OVER_FULL = "deriv-partial-over-full"

    @property
    def is_derivative(self) -> bool:
        return self in (RatioKind.DERIV_FULL_OVER_PARTIAL, RatioKind.DERIV_PARTIAL_OVER_FULL)

    @property
    def full_in_numerator(self) -> bool:
        return self in (RatioKind.FULL_OVER_PARTIAL, RatioKind.DERIV_FULL_OVER_PARTIAL)


def _check_order(m: int) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 0):
        raise DomainError(f"partial-sum order m must be a nonnegative integer, got {m!r}")


@dataclass(frozen=True)
class RatioCase:
    kind: RatioKind
    m: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RatioKind(self.kind))
        _check_order(self.m)


def _as_disk_points(z: ComplexLike, radius: float = 1.0) -> np.ndarray:
    arr = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(arr)) or np.any(np.abs(arr) > radius + DISK_SLACK):
        raise DomainError("evaluation points must lie in the closed unit disk")
    return arr


def _unwrap(z_in: ComplexLike, out: np.ndarray) -> ComplexLike:
    if np.ndim(z_in) == 0 and not isinstance(z_in, np.ndarray):
        return complex(out)
    return out


def compensated_polyval(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``sum_k coeffs[k] z^k`` summed in ascending k with Kahan compensation."""
    total = np.full(z.shape, complex(coeffs[0]))
    comp = np.zeros(z.shape, dtype=complex)
    power = np.ones(z.shape, dtype=complex)
    for c in coeffs[1:]:
        power = power * z
        y = c * power - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _partial_coeffs(table: CoefficientTable, m: int, derivative: bool) -> np.ndarray:
    coeffs = np.array((1.0,) + table.coefficients(m))
    if derivative:
        coeffs = coeffs * np.arange(1, m + 2)
    return coeffs


def full_series(table: CoefficientTable, z: np.ndarray, derivative: bool = False) -> np.ndarray:
    """``1 + sum A_n z^n`` (the normalized function over z), or its derivative series."""
    return compensated_polyval(table.derivative_series if derivative else table.series, z)


def partial_series(table: CoefficientTable, m: int, z: np.ndarray, derivative: bool = False) -> np.ndarray:
    return compensated_polyval(_partial_coeffs(table, m, derivative), z)


def tail_series(table: CoefficientTable, m: int, z: np.ndarray, derivative: bool = False) -> np.ndarray:
    """``sum_{n>m} A_n z^n`` (weighted by n+1 for derivatives), truncated at the table."""
    coeffs = table.derivative_series if derivative else table.series
    if m >= table.truncation_index:
        return np.zeros(z.shape, dtype=complex)
    head = np.zeros(m + 1)
    tail = np.concatenate([head, coeffs[m + 1 :]])
    return compensated_polyval(tail, z)


def eval_ml(table: CoefficientTable, z: ComplexLike) -> ComplexLike:
    """Two-parameter Mittag-Leffler function ``sum z^n / Gamma(alpha n + beta)``."""
    pts = _as_disk_points(z)
    out = full_series(table, pts) / math.gamma(table.params.beta)
    return _unwrap(z, out)


def eval_normalized(table: CoefficientTable, z: ComplexLike) -> ComplexLike:
    """``z + sum_{n>=1} A_n z^(n+1)``."""
    pts = _as_disk_points(z)
    return _unwrap(z, pts * full_series(table, pts))


def eval_normalized_derivative(table: CoefficientTable, z: ComplexLike) -> ComplexLike:
    """``1 + sum_{n>=1} (n+1) A_n z^n``."""
    pts = _as_disk_points(z)
    return _unwrap(z, full_series(table, pts, derivative=True))


def eval_partial_sum(table: CoefficientTable, m: int, z: ComplexLike) -> ComplexLike:
    """``z + sum_{n=1}^m A_n z^(n+1)``; order 0 is the identity."""
    _check_order(m)
    pts = _as_disk_points(z)
    return _unwrap(z, pts * partial_series(table, m, pts))


def eval_partial_sum_derivative(table: CoefficientTable, m: int, z: ComplexLike) -> ComplexLike:
    _check_order(m)
    pts = _as_disk_points(z)
    return _unwrap(z, partial_series(table, m, pts, derivative=True))


def ratio_parts(table: CoefficientTable, case: RatioCase, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator of a theorem ratio with the common factor z removed."""
    deriv = case.kind.is_derivative
    full = full_series(table, z, derivative=deriv)
    part = partial_series(table, case.m, z, derivative=deriv)
    return (full, part) if case.kind.full_in_numerator else (part, full)


def eval_ratio(
    table: CoefficientTable,
    case: RatioCase,
    z: ComplexLike,
    guard: float = DENOMINATOR_GUARD,
) -> ComplexLike:
    """One of the four theorem ratios; equals 1 at the origin."""
    pts = _as_disk_points(z)
    num, den = ratio_parts(table, case, pts)
    if np.any(np.abs(den) < guard):
        raise SingularDenominatorError(
            f"denominator of {case.kind.value} (m={case.m}) is below {guard:g} in modulus"
        )
    return _unwrap(z, num / den)
