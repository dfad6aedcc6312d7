"""Empirical certification of the ratio bounds on the closed unit disk.

The real part of an analytic function is harmonic, so its minimum over the
closed disk sits on the boundary circle.  We sample the circle uniformly,
refine the best few local minima with golden-section search, and add a
random interior spot check as a consistency probe.  This is floating-point
sampling with a stated slack, not interval certification.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .bounds import case_threshold, lemma_derivative_bound, lemma_modulus_bound, raw_bound
from .errors import DomainError, PreconditionError, SingularDenominatorError
from .identities import corollary_quantity
from .series import (
    DENOMINATOR_GUARD,
    RatioCase,
    RatioKind,
    full_series,
    ratio_parts,
)
from .special import DEFAULT_TOL, CoefficientTable, MLParams, build_table

log = logging.getLogger(__name__)

RealFn = Callable[[np.ndarray], np.ndarray]
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Status(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    HYPOTHESIS_VIOLATED = "HypothesisViolated"


@dataclass(frozen=True)
class VerifyConfig:
    radius: float = 1.0
    boundary_samples: int = 4096
    refine_iters: int = 60
    tol: float = 1e-9
    seed: int = 0
    interior_samples: int = 512
    series_tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not 0 < self.radius <= 1:
            raise DomainError(f"radius must lie in (0, 1], got {self.radius!r}")
        if self.boundary_samples < 16:
            raise DomainError(f"boundary_samples must be >= 16, got {self.boundary_samples!r}")
        if self.refine_iters < 0 or self.interior_samples < 0:
            raise DomainError("refine_iters and interior_samples must be nonnegative")
        if not self.tol >= 0:
            raise DomainError(f"tol must be nonnegative, got {self.tol!r}")


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one check.

    Lower-bound checks fill ``empirical_inf``; the modulus checks fill
    ``empirical_sup`` instead.  ``margin`` is oriented so that a positive
    value means the inequality holds with room to spare.
    """

    case: str
    alpha: float
    beta: float
    m: int
    paper_bound: float
    empirical_inf: float | None
    argmin_theta: float | None
    margin: float | None
    samples_used: int
    status: Status
    empirical_sup: float | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["status"] = self.status.value
        return d


@dataclass(frozen=True)
class CircleMin:
    value: float
    theta: float
    evaluations: int


def _golden_section(f: Callable[[float], float], lo: float, hi: float, iters: int) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def minimize_on_circle(
    f: RealFn,
    radius: float = 1.0,
    samples: int = 4096,
    refine_iters: int = 60,
    half: bool = False,
    n_refine: int = 3,
) -> CircleMin:
    """Minimize ``f(radius * e^{i theta})`` over theta.

    ``f`` maps an array of complex points to real values.  With ``half`` the
    search covers theta in [0, pi] only (valid for conjugate-symmetric f).
    """
    if half:
        theta = np.linspace(0.0, math.pi, samples)
    else:
        theta = 2.0 * math.pi * np.arange(samples) / samples
    values = np.asarray(f(radius * np.exp(1j * theta)), dtype=float)
    if np.any(np.isnan(values)):
        raise SingularDenominatorError("objective is undefined at a boundary sample")

    if half:
        left = np.concatenate([[np.inf], values[:-1]])
        right = np.concatenate([values[1:], [np.inf]])
    else:
        left, right = np.roll(values, 1), np.roll(values, -1)
    local = np.flatnonzero((values <= left) & (values <= right))
    # lexsort: primary key value, ties toward smaller theta
    order = local[np.lexsort((theta[local], values[local]))][:n_refine]

    def scalar(t: float) -> float:
        return float(f(np.array([radius * complex(math.cos(t), math.sin(t))]))[0])

    best_val, best_theta = float(values[order[0]]), float(theta[order[0]])
    evaluations = samples
    step = (math.pi / (samples - 1)) if half else (2.0 * math.pi / samples)
    for idx in order:
        if refine_iters == 0:
            break
        lo, hi = theta[idx] - step, theta[idx] + step
        if half:
            lo, hi = max(lo, 0.0), min(hi, math.pi)
        t, v = _golden_section(scalar, lo, hi, refine_iters)
        evaluations += refine_iters + 2
        t = t % (2.0 * math.pi)
        # refinement must beat the incumbent by more than rounding noise
        if v < best_val - 4e-16 * max(1.0, abs(best_val)):
            best_val, best_theta = v, t
    return CircleMin(best_val, best_theta, evaluations)


def interior_points(cfg: VerifyConfig, count: int | None = None) -> np.ndarray:
    """Seeded points uniformly distributed in the disk of radius ``cfg.radius``."""
    rng = np.random.default_rng(cfg.seed)
    n = cfg.interior_samples if count is None else count
    r = cfg.radius * np.sqrt(rng.random(n))
    t = 2.0 * math.pi * rng.random(n)
    return r * np.exp(1j * t)


def denominator_certificate(table: CoefficientTable, kind: RatioKind) -> float:
    """Return the certified coefficient sum that keeps ratio denominators nonzero.

    ``1 - sum c_n > 0`` implies ``|1 + sum c_n z^n| > 0`` on the closed disk
    for both the full and any partial series.
    """
    weighted = RatioKind(kind).is_derivative
    total = table.coefficient_sum(weighted=weighted)
    if not total < 1.0:
        name = "sum (n+1) A_n" if weighted else "sum A_n"
        raise PreconditionError(
            f"denominator certificate failed: {name} = {total:.17g} >= 1 "
            f"(alpha={table.params.alpha}, beta={table.params.beta})"
        )
    return total


def _ratio_real(table: CoefficientTable, case: RatioCase) -> RealFn:
    def f(z: np.ndarray) -> np.ndarray:
        num, den = ratio_parts(table, case, z)
        bad = np.abs(den) < DENOMINATOR_GUARD
        out = (num / np.where(bad, 1.0, den)).real
        return np.where(bad, np.nan, out)

    return f


def boundary_min_real(
    table: CoefficientTable,
    case: RatioCase,
    cfg: VerifyConfig = VerifyConfig(),
    half: bool = False,
    certify: bool = True,
) -> tuple[float, float]:
    """Minimum of ``Re(ratio)`` over the circle of radius ``cfg.radius`` and its angle."""
    if certify:
        denominator_certificate(table, case.kind)
    res = minimize_on_circle(
        _ratio_real(table, case), cfg.radius, cfg.boundary_samples, cfg.refine_iters, half=half
    )
    return res.value, res.theta


def verify_theorem(
    case: RatioCase | RatioKind | str,
    params: MLParams,
    m: int | None = None,
    cfg: VerifyConfig = VerifyConfig(),
    permissive: bool = False,
) -> BoundReport:
    """Check ``Re(ratio) >= bound`` on the closed disk for one parameter set.

    Outside the hypotheses the status is HypothesisViolated; in permissive
    mode the raw formula bound and empirical infimum are still computed.
    """
    if not isinstance(case, RatioCase):
        case = RatioCase(RatioKind(case), 0 if m is None else m)
    elif m is not None and m != case.m:
        case = RatioCase(case.kind, m)
    kind = case.kind
    bound = raw_bound(kind, params.beta)
    hypotheses = params.alpha >= 1.0 and params.beta >= case_threshold(kind)
    common = dict(case=kind.value, alpha=params.alpha, beta=params.beta, m=case.m, paper_bound=bound)
    details: dict[str, Any] = {"hypotheses": hypotheses, "threshold": case_threshold(kind)}
    if not hypotheses and not permissive:
        return BoundReport(
            **common, empirical_inf=None, argmin_theta=None, margin=None,
            samples_used=0, status=Status.HYPOTHESIS_VIOLATED, details=details,
        )

    table = build_table(params, cfg.series_tol)
    details.update(truncation_index=table.truncation_index, tail_bound=table.tail_bound)
    try:
        details["certificate_sum"] = denominator_certificate(table, kind)
    except PreconditionError:
        if hypotheses:
            raise
        details["certificate_sum"] = None

    f = _ratio_real(table, case)
    try:
        res = minimize_on_circle(f, cfg.radius, cfg.boundary_samples, cfg.refine_iters)
        interior = f(interior_points(cfg))
    except SingularDenominatorError as exc:
        if hypotheses:
            raise
        details["error"] = str(exc)
        return BoundReport(
            **common, empirical_inf=None, argmin_theta=None, margin=None,
            samples_used=0, status=Status.HYPOTHESIS_VIOLATED, details=details,
        )
    if np.any(np.isnan(interior)):
        raise SingularDenominatorError(f"{kind.value} denominator vanishes at an interior sample")
    interior_min = float(interior.min()) if interior.size else math.inf
    details["boundary_min"] = res.value
    details["interior_min"] = interior_min
    empirical = min(res.value, interior_min)
    margin = empirical - bound
    if not hypotheses:
        status = Status.HYPOTHESIS_VIOLATED
    else:
        status = Status.PASS if margin >= -cfg.tol else Status.FAIL
    log.debug("%s alpha=%g beta=%g m=%d inf=%.17g bound=%.17g", kind.value, params.alpha, params.beta, case.m, empirical, bound)
    return BoundReport(
        **common, empirical_inf=empirical, argmin_theta=res.theta, margin=margin,
        samples_used=res.evaluations + interior.size, status=status, details=details,
    )


def verify_lemma(params: MLParams, cfg: VerifyConfig = VerifyConfig()) -> list[BoundReport]:
    """Boundary maxima of ``|E|`` and ``|E'|`` against their closed-form bounds.

    Returns two reports, ``lemma-modulus`` and ``lemma-derivative``.
    """
    hypotheses = params.lemma_hypotheses
    reports = []
    for label, derivative in (("lemma-modulus", False), ("lemma-derivative", True)):
        if not hypotheses:
            reports.append(BoundReport(
                label, params.alpha, params.beta, 0, math.nan, None, None, None, 0,
                Status.HYPOTHESIS_VIOLATED, details={"hypotheses": False},
            ))
            continue
        bound = lemma_derivative_bound(params.beta) if derivative else lemma_modulus_bound(params.beta)
        table = build_table(params, cfg.series_tol)
        if derivative:
            def neg_abs(z, table=table):
                return -np.abs(full_series(table, z, derivative=True))
        else:
            def neg_abs(z, table=table):
                return -np.abs(z * full_series(table, z))
        res = minimize_on_circle(neg_abs, cfg.radius, cfg.boundary_samples, cfg.refine_iters)
        sup = -res.value
        margin = bound - sup
        status = Status.PASS if margin >= -cfg.tol else Status.FAIL
        reports.append(BoundReport(
            label, params.alpha, params.beta, 0, bound, None, res.theta, margin,
            res.evaluations, status, empirical_sup=sup,
            details={"hypotheses": True, "truncation_index": table.truncation_index},
        ))
    return reports


@dataclass(frozen=True)
class CorollarySpec:
    beta: int
    kind: RatioKind
    scale: Fraction
    bound: Fraction


# alpha = 2 and m = 0 throughout; ``scale`` converts the normalized-function
# ratio into the published expression.
COROLLARIES: dict[str, CorollarySpec] = {
    "C31a": CorollarySpec(2, RatioKind.FULL_OVER_PARTIAL, Fraction(1), Fraction(1, 4)),
    "C31b": CorollarySpec(2, RatioKind.PARTIAL_OVER_FULL, Fraction(1), Fraction(4, 7)),
    "C31c": CorollarySpec(3, RatioKind.FULL_OVER_PARTIAL, Fraction(1, 2), Fraction(5, 18)),
    "C31d": CorollarySpec(3, RatioKind.PARTIAL_OVER_FULL, Fraction(2), Fraction(18, 13)),
    "C32a": CorollarySpec(4, RatioKind.FULL_OVER_PARTIAL, Fraction(1, 6), Fraction(11, 96)),
    "C32b": CorollarySpec(4, RatioKind.PARTIAL_OVER_FULL, Fraction(6), Fraction(32, 7)),
    "C32c": CorollarySpec(4, RatioKind.DERIV_FULL_OVER_PARTIAL, Fraction(1, 3), Fraction(1, 24)),
    "C32d": CorollarySpec(4, RatioKind.DERIV_PARTIAL_OVER_FULL, Fraction(3), Fraction(8, 5)),
}

AGREEMENT_TOL = 1e-8


def verify_corollary(corollary_id: str, cfg: VerifyConfig = VerifyConfig()) -> BoundReport:
    """Check a published corollary constant through the series and the closed form."""
    try:
        spec = COROLLARIES[corollary_id]
    except KeyError:
        raise DomainError(f"unknown corollary id {corollary_id!r}; expected one of {sorted(COROLLARIES)}") from None
    params = MLParams(2.0, float(spec.beta))
    bound = float(spec.bound)
    scale = float(spec.scale)

    series_report = verify_theorem(RatioCase(spec.kind, 0), params, cfg=cfg)

    def closed(z: np.ndarray) -> np.ndarray:
        return corollary_quantity(corollary_id, z).real

    res = minimize_on_circle(closed, cfg.radius, cfg.boundary_samples, cfg.refine_iters)
    interior = closed(interior_points(cfg))
    closed_inf = min(res.value, float(interior.min()) if interior.size else math.inf)
    series_inf = scale * series_report.empirical_inf
    agreement = abs(series_inf - closed_inf)
    margin = min(closed_inf, series_inf) - bound
    ok = margin >= -cfg.tol and agreement <= AGREEMENT_TOL and series_report.status is Status.PASS
    details = {
        "series_inf": series_inf,
        "closed_form_inf": closed_inf,
        "agreement": agreement,
        "ratio_case": spec.kind.value,
        "scale": str(spec.scale),
        "bound_fraction": str(spec.bound),
        "theorem_bound_scaled": scale * series_report.paper_bound,
    }
    return BoundReport(
        corollary_id, params.alpha, params.beta, 0, bound, closed_inf, res.theta, margin,
        series_report.samples_used + res.evaluations + interior.size,
        Status.PASS if ok else Status.FAIL, details=details,
    )


def univalence_spot_check(params: MLParams, cfg: VerifyConfig = VerifyConfig()) -> BoundReport:
    """Check ``min Re E'(z) > 0`` on boundary and interior samples."""
    deriv_threshold = case_threshold(RatioKind.DERIV_FULL_OVER_PARTIAL)
    hypotheses = params.alpha >= 1.0 and params.beta >= deriv_threshold
    if not hypotheses:
        return BoundReport(
            "univalence", params.alpha, params.beta, 0, 0.0, None, None, None, 0,
            Status.HYPOTHESIS_VIOLATED, details={"hypotheses": False, "threshold": deriv_threshold},
        )
    table = build_table(params, cfg.series_tol)

    def re_deriv(z: np.ndarray) -> np.ndarray:
        return full_series(table, z, derivative=True).real

    res = minimize_on_circle(re_deriv, cfg.radius, cfg.boundary_samples, cfg.refine_iters)
    interior = re_deriv(interior_points(cfg))
    empirical = min(res.value, float(interior.min()) if interior.size else math.inf)
    status = Status.PASS if empirical > -cfg.tol else Status.FAIL
    return BoundReport(
        "univalence", params.alpha, params.beta, 0, 0.0, empirical, res.theta, empirical,
        res.evaluations + interior.size, status,
        details={"hypotheses": True, "deriv_ratio_bound": raw_bound(RatioKind.DERIV_FULL_OVER_PARTIAL, params.beta)},
    )


def scan_beta(
    case: RatioCase | RatioKind | str,
    alpha: float,
    m: int,
    beta_grid: Sequence[float],
    cfg: VerifyConfig = VerifyConfig(),
) -> list[BoundReport]:
    """Permissive theorem checks across a grid of beta, ordered by beta."""
    kind = case.kind if isinstance(case, RatioCase) else RatioKind(case)
    betas = sorted(float(b) for b in beta_grid)
    if any(not b > 0 for b in betas):
        raise DomainError("beta grid values must be positive")
    return [verify_theorem(RatioCase(kind, m), MLParams(alpha, b), cfg=cfg, permissive=True) for b in betas]
