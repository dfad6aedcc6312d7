"""Real-argument gamma kernels and Mittag-Leffler series coefficients.

The normalized series is ``z + sum_{n>=1} A_n z^(n+1)`` with
``A_n = Gamma(beta) / Gamma(alpha*n + beta)``.  A :class:`CoefficientTable`
stores ``A_1..A_N`` together with certified bounds on the discarded tails
``sum_{n>N} A_n`` and ``sum_{n>N} (n+1) A_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError, TruncationError

DEFAULT_TOL = 1e-15
MAX_TERMS = 10_000

# Relative inflation applied to computed tail bounds to absorb kernel rounding.
_TAIL_SAFETY = 1.0 + 1e-12


@dataclass(frozen=True)
class MLParams:
    """Parameter pair (alpha, beta) of ``E_{alpha,beta}``."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive finite real, got {value!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def alpha_ge_1(self) -> bool:
        return self.alpha >= 1.0

    @property
    def beta_ge_1(self) -> bool:
        return self.beta >= 1.0

    @property
    def lemma_hypotheses(self) -> bool:
        """True when alpha >= 1 and beta >= 1 (the modulus-bound regime)."""
        return self.alpha_ge_1 and self.beta_ge_1


def log_gamma(x: float) -> float:
    """Return ``ln Gamma(x)`` for real ``x > 0``."""
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"log_gamma requires a positive finite argument, got {x!r}")
    return math.lgamma(x)


def pochhammer(x: float, n: int) -> float:
    """Rising factorial ``(x)_n = x (x+1) ... (x+n-1)``, with ``(x)_0 = 1``."""
    if not x > 0:
        raise DomainError(f"pochhammer requires x > 0, got {x!r}")
    if n < 0:
        raise DomainError(f"pochhammer requires n >= 0, got {n!r}")
    result = 1.0
    for k in range(n):
        result *= x + k
    return result


def pochhammer_lower_bound_check(x: float, n: int) -> bool:
    """Check ``(x)_n >= x**n`` for ``x >= 1``."""
    if x < 1:
        raise DomainError(f"the lower bound (x)_n >= x^n is stated for x >= 1, got {x!r}")
    return pochhammer(x, n) >= x**n


def _log_coefficient(params: MLParams, n: int) -> float:
    return log_gamma(params.beta) - log_gamma(params.alpha * n + params.beta)


def coefficient(params: MLParams, n: int) -> float:
    """``A_n = Gamma(beta) / Gamma(alpha*n + beta)``, computed in log space."""
    if n < 1:
        raise DomainError(f"coefficient index must be >= 1, got {n!r}")
    return math.exp(_log_coefficient(params, n))


@dataclass(frozen=True)
class CoefficientTable:
    """Immutable table of ``A_1..A_N`` with certified tail bounds.

    ``tail_bound`` bounds ``sum_{n>N} A_n`` and ``weighted_tail_bound`` bounds
    ``sum_{n>N} (n+1) A_n``; both are at most ``tol``.
    """

    params: MLParams
    a: tuple[float, ...]
    truncation_index: int
    tail_bound: float
    weighted_tail_bound: float
    tol: float

    @cached_property
    def series(self) -> np.ndarray:
        """Coefficients ``[1, A_1, ..., A_N]`` of ``E(z)/z`` as a read-only array."""
        arr = np.array((1.0,) + self.a)
        arr.setflags(write=False)
        return arr

    @cached_property
    def derivative_series(self) -> np.ndarray:
        """Coefficients ``[1, 2 A_1, ..., (N+1) A_N]`` of ``E'(z)``."""
        arr = self.series * np.arange(1, self.truncation_index + 2)
        arr.setflags(write=False)
        return arr

    def coefficients(self, upto: int) -> tuple[float, ...]:
        """``A_1..A_upto``, computing entries past the table directly."""
        if upto <= self.truncation_index:
            return self.a[:upto]
        extra = tuple(coefficient(self.params, n) for n in range(self.truncation_index + 1, upto + 1))
        return self.a + extra

    def coefficient_sum(self, weighted: bool = False) -> float:
        """Upper bound on ``sum_{n>=1} A_n`` (or ``(n+1) A_n``), tail included."""
        if weighted:
            return math.fsum((n + 1) * a for n, a in enumerate(self.a, start=1)) + self.weighted_tail_bound
        return math.fsum(self.a) + self.tail_bound


def _ratio_tail(log_a_next: float, log_a_after: float, n_next: int) -> tuple[float, float]:
    """Tail bounds from the ratio test, starting at index ``n_next = N + 1``.

    ``A_{k+1}/A_k = Gamma(alpha k + beta) / Gamma(alpha k + alpha + beta)``
    decreases in k because the digamma function is increasing, so the first
    ratio bounds every later one; the same holds for the ``(k+1)`` weights.
    """
    r = math.exp(log_a_after - log_a_next)
    a_next = math.exp(log_a_next)
    plain = a_next / (1.0 - r) if r < 1.0 else math.inf
    rho = r * (n_next + 2) / (n_next + 1)
    weighted = (n_next + 1) * a_next / (1.0 - rho) if rho < 1.0 else math.inf
    return plain, weighted


def _geometric_tail(beta: float, n: int) -> tuple[float, float]:
    """Tail bounds from ``A_k <= 1 / (beta (beta+1)^(k-1))``, valid for alpha, beta >= 1."""
    q = 1.0 / (beta + 1.0)
    qn = q**n
    plain = qn / (beta * (1.0 - q))
    weighted = qn * ((n + 2) / (1.0 - q) + q / (1.0 - q) ** 2) / beta
    return plain, weighted


def build_table(params: MLParams, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> CoefficientTable:
    """Choose the smallest N whose certified tails are both at most ``tol``."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    log_a = [_log_coefficient(params, 1), _log_coefficient(params, 2)]
    geometric = params.lemma_hypotheses
    for n in range(1, max_terms + 1):
        # log_a[k] holds log A_{k+1}; we need A_{n+1} and A_{n+2}.
        while len(log_a) < n + 2:
            log_a.append(_log_coefficient(params, len(log_a) + 1))
        plain, weighted = _ratio_tail(log_a[n], log_a[n + 1], n + 1)
        if geometric:
            g_plain, g_weighted = _geometric_tail(params.beta, n)
            plain, weighted = min(plain, g_plain), min(weighted, g_weighted)
        plain *= _TAIL_SAFETY
        weighted *= _TAIL_SAFETY
        if plain <= tol and weighted <= tol:
            a = tuple(math.exp(v) for v in log_a[:n])
            return CoefficientTable(params, a, n, plain, weighted, tol)
    raise TruncationError(
        f"no truncation index N <= {max_terms} certifies tail <= {tol:g} "
        f"for alpha={params.alpha}, beta={params.beta}"
    )
