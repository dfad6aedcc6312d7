"""Closed forms of the normalized function for alpha = 2, beta = 1..4.

``s`` below is a square root of ``z``.  Every expression is even in ``s``,
so either root gives the same value.  These routines never touch the series
code and serve as independent oracles for it.
"""

from __future__ import annotations

import enum
from typing import Callable, Iterable

import numpy as np

from .series import ComplexLike, _unwrap, eval_normalized, eval_normalized_derivative
from .special import CoefficientTable, MLParams, build_table

# Below this |z| the E24 quotients switch to their Taylor expansions.
_SMALL_Z = 1e-4


class SpecialCase(str, enum.Enum):
    E21 = "E21"
    E22 = "E22"
    E23 = "E23"
    E24 = "E24"

    @property
    def params(self) -> MLParams:
        return MLParams(2.0, float(self.value[-1]))


def _sinhc(s: np.ndarray) -> np.ndarray:
    safe = np.where(s == 0, 1.0, s)
    return np.where(s == 0, 1.0, np.sinh(safe) / safe)


def _e24_from_root(s: np.ndarray) -> np.ndarray:
    z = s * s
    small = np.abs(z) < _SMALL_Z
    safe = np.where(small, 1.0, s)
    direct = 6.0 * (np.sinh(safe) - safe) / safe
    taylor = z + z * z / 20.0 + z**3 / 840.0
    return np.where(small, taylor, direct)


def _e24_derivative_from_root(s: np.ndarray) -> np.ndarray:
    z = s * s
    small = np.abs(z) < _SMALL_Z
    safe = np.where(small, 1.0, s)
    direct = 3.0 * (safe * np.cosh(safe) - np.sinh(safe)) / safe**3
    taylor = 1.0 + z / 10.0 + z * z / 280.0 + z**3 / 15120.0
    return np.where(small, taylor, direct)


def closed_form_from_root(case: SpecialCase, s: ComplexLike) -> np.ndarray:
    """Closed form evaluated at ``z = s**2`` using the given root ``s``."""
    s = np.asarray(s, dtype=complex)
    case = SpecialCase(case)
    if case is SpecialCase.E21:
        return s * s * np.cosh(s)
    if case is SpecialCase.E22:
        return s * np.sinh(s)
    if case is SpecialCase.E23:
        return 2.0 * (np.cosh(s) - 1.0)
    return _e24_from_root(s)


def closed_form_derivative_from_root(case: SpecialCase, s: ComplexLike) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    case = SpecialCase(case)
    if case is SpecialCase.E21:
        # d/dz [z cosh s] = cosh s + s sinh s / 2
        return np.cosh(s) + s * np.sinh(s) / 2.0
    if case is SpecialCase.E22:
        # d/dz [s sinh s] = (sinh s / s + cosh s) / 2
        return (_sinhc(s) + np.cosh(s)) / 2.0
    if case is SpecialCase.E23:
        return _sinhc(s)
    return _e24_derivative_from_root(s)


def closed_form(case: SpecialCase, z: ComplexLike) -> ComplexLike:
    """``z cosh sqrt(z)``, ``sqrt(z) sinh sqrt(z)``, ``2(cosh sqrt(z) - 1)`` or
    ``6(sinh sqrt(z) - sqrt(z))/sqrt(z)`` (principal root)."""
    out = closed_form_from_root(case, np.sqrt(np.asarray(z, dtype=complex)))
    return _unwrap(z, out)


def closed_form_derivative(case: SpecialCase, z: ComplexLike) -> ComplexLike:
    out = closed_form_derivative_from_root(case, np.sqrt(np.asarray(z, dtype=complex)))
    return _unwrap(z, out)


def exp_closed_form(z: ComplexLike) -> ComplexLike:
    """The alpha = beta = 1 case, ``z e^z``."""
    arr = np.asarray(z, dtype=complex)
    return _unwrap(z, arr * np.exp(arr))


def identity_residual(
    case: SpecialCase,
    points: Iterable[complex] | np.ndarray,
    table: CoefficientTable | None = None,
) -> tuple[float, float]:
    """Max deviation of the series from the closed form (value, derivative)."""
    case = SpecialCase(case)
    table = table or build_table(case.params)
    pts = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=complex)
    value = np.max(np.abs(eval_normalized(table, pts) - closed_form(case, pts)))
    deriv = np.max(np.abs(eval_normalized_derivative(table, pts) - closed_form_derivative(case, pts)))
    return float(value), float(deriv)


# Corollary quantities, written directly in sqrt(z) so they share no code with
# the series evaluators.  Values at z = 0 are the removable limits.


def _quotient(num: np.ndarray, den: np.ndarray, limit: float, z: np.ndarray) -> np.ndarray:
    zero = z == 0
    return np.where(zero, limit, num / np.where(zero, 1.0, den))


def _c31a(z):
    s = np.sqrt(z)
    return _sinhc(s)


def _c31c(z):
    s = np.sqrt(z)
    small = np.abs(z) < _SMALL_Z
    taylor = 0.5 + z / 24.0 + z * z / 720.0
    return np.where(small, taylor, _quotient(np.cosh(s) - 1.0, z, 0.5, z))


def _c32a(z):
    s = np.sqrt(z)
    small = np.abs(z) < _SMALL_Z
    taylor = 1.0 / 6.0 + z / 120.0 + z * z / 5040.0
    return np.where(small, taylor, _quotient(np.sinh(s) - s, z * s, 1.0 / 6.0, z))


def _c32c(z):
    s = np.sqrt(z)
    small = np.abs(z) < _SMALL_Z
    taylor = 1.0 / 3.0 + z / 30.0 + z * z / 840.0
    return np.where(small, taylor, _quotient(s * np.cosh(s) - np.sinh(s), z * s, 1.0 / 3.0, z))


CorollaryFn = Callable[[np.ndarray], np.ndarray]

COROLLARY_QUANTITIES: dict[str, CorollaryFn] = {
    "C31a": _c31a,
    "C31b": lambda z: 1.0 / _c31a(z),
    "C31c": _c31c,
    "C31d": lambda z: 1.0 / _c31c(z),
    "C32a": _c32a,
    "C32b": lambda z: 1.0 / _c32a(z),
    "C32c": _c32c,
    "C32d": lambda z: 1.0 / _c32c(z),
}


def corollary_quantity(corollary_id: str, z: ComplexLike) -> ComplexLike:
    """The expression whose real part each corollary bounds, e.g. ``sinh(sqrt z)/sqrt z``."""
    arr = np.asarray(z, dtype=complex)
    return _unwrap(z, COROLLARY_QUANTITIES[corollary_id](arr))
