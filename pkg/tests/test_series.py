import cmath
import math

import numpy as np
import pytest

from conftest import mp_normalized, random_disk
from mlpartial.errors import DomainError, SingularDenominatorError
from mlpartial.series import (
    RatioCase,
    RatioKind,
    eval_ml,
    eval_normalized,
    eval_normalized_derivative,
    eval_partial_sum,
    eval_partial_sum_derivative,
    eval_ratio,
)
from mlpartial.special import MLParams, build_table


def table(alpha, beta):
    return build_table(MLParams(alpha, beta))


def test_eval_ml_examples():
    assert eval_ml(table(1, 1), 0) == 1
    assert eval_ml(table(1, 1), 1) == pytest.approx(math.e, rel=1e-15)
    assert eval_ml(table(2, 1), 1) == pytest.approx(math.cosh(1), rel=1e-15)


def test_eval_ml_consistent_with_normalized(disk_points):
    t = table(1.5, 2.5)
    lhs = eval_normalized(t, disk_points)
    rhs = math.gamma(2.5) * disk_points * eval_ml(t, disk_points)
    assert np.max(np.abs(lhs - rhs)) <= 1e-14


def test_eval_normalized_examples():
    for a, b in [(1, 1), (2, 3), (0.5, 0.7)]:
        assert eval_normalized(table(a, b), 0) == 0
    assert eval_normalized(table(2, 2), 1) == pytest.approx(math.sinh(1), rel=1e-15)
    assert eval_normalized(table(2, 3), -1) == pytest.approx(2 * (math.cos(1) - 1), rel=1e-14)


def test_eval_normalized_derivative_examples():
    assert eval_normalized_derivative(table(1.7, 2.2), 0) == 1
    assert eval_normalized_derivative(table(1, 1), 1) == pytest.approx(2 * math.e, rel=1e-15)
    assert eval_normalized_derivative(table(2, 4), 1) == pytest.approx(3 * (math.cosh(1) - math.sinh(1)), rel=1e-14)


def test_partial_sum_examples():
    t = table(2, 2)
    z = 0.3 - 0.4j
    assert eval_partial_sum(t, 0, z) == z
    assert eval_partial_sum(t, 1, 1) == pytest.approx(1 + 1 / 6, rel=1e-15)
    assert eval_partial_sum(t, t.truncation_index, z) == pytest.approx(eval_normalized(t, z), abs=t.tail_bound + 1e-16)
    assert eval_partial_sum_derivative(t, 0, z) == 1
    assert eval_partial_sum_derivative(t, 1, 1) == pytest.approx(1 + 2 / 6, rel=1e-15)
    assert eval_partial_sum_derivative(table(1, 1), 2, 0) == 1


def test_ratio_examples():
    for kind in RatioKind:
        assert eval_ratio(table(2, 4), RatioCase(kind, 2), 0) == 1
    assert eval_ratio(table(2, 2), RatioCase(RatioKind.FULL_OVER_PARTIAL, 0), -1) == pytest.approx(math.sin(1), rel=1e-14)
    expected = -1 / (2 * (math.cos(1) - 1))
    assert eval_ratio(table(2, 3), RatioCase(RatioKind.PARTIAL_OVER_FULL, 0), -1) == pytest.approx(expected, rel=1e-14)


def test_ratio_singular_denominator():
    # A_1 = 1 for alpha = beta = 1, so 1 + A_1 z vanishes at z = -1.
    with pytest.raises(SingularDenominatorError):
        eval_ratio(table(1, 1), RatioCase(RatioKind.FULL_OVER_PARTIAL, 1), -1)


@pytest.mark.parametrize(
    "fn", [eval_ml, eval_normalized, eval_normalized_derivative]
)
def test_outside_disk_rejected(fn):
    with pytest.raises(DomainError):
        fn(table(2, 2), 1.01)


def test_invalid_order_rejected():
    with pytest.raises(DomainError):
        eval_partial_sum(table(2, 2), -1, 0.5)
    with pytest.raises(DomainError):
        RatioCase(RatioKind.FULL_OVER_PARTIAL, 1.5)


@pytest.mark.parametrize("alpha, beta", [(1, 1), (1.5, 3), (3, 1.5), (4, 4), (0.6, 0.8)])
def test_matches_brute_force(alpha, beta):
    t = table(alpha, beta)
    pts = random_disk(60, seed=int(10 * alpha + beta))
    got = eval_normalized(t, pts)
    ref = np.array([mp_normalized(alpha, beta, z) for z in pts])
    assert np.max(np.abs(got - ref) / np.abs(ref)) <= 1e-10
    got_d = eval_normalized_derivative(t, pts)
    ref_d = np.array([mp_normalized(alpha, beta, z, derivative=True) for z in pts])
    assert np.max(np.abs(got_d - ref_d)) <= 1e-13


@pytest.mark.parametrize("alpha, beta", [(1, 1), (2, 2), (1.5, 4), (3, 1.2)])
def test_derivative_matches_finite_difference(alpha, beta):
    t = table(alpha, beta)
    h = 1e-5
    pts = random_disk(50, seed=7, radius=1 - 2 * h)
    fd = (eval_normalized(t, pts + h) - eval_normalized(t, pts - h)) / (2 * h)
    assert np.max(np.abs(fd - eval_normalized_derivative(t, pts))) <= 1e-6


@pytest.mark.parametrize("alpha, beta", [(1, 1), (2, 2), (1, 4)])
def test_normalization_near_origin(alpha, beta):
    t = table(alpha, beta)
    total = sum(t.a) + t.tail_bound
    pts = random_disk(100, seed=3, radius=0.01)
    dev = np.abs(eval_ratio(t, RatioCase(RatioKind.FULL_OVER_PARTIAL, 0), pts) - 1)
    assert np.all(dev <= 2 * total * np.abs(pts))


@pytest.mark.parametrize("alpha, beta", [(1, 1), (2, 2), (1.5, 1.5)])
def test_partial_sums_converge_monotonically(alpha, beta):
    t = table(alpha, beta)
    for x in (0.25, 0.8, 1.0):
        full = eval_normalized(t, x)
        errs = [abs(eval_partial_sum(t, m, x) - full) for m in range(t.truncation_index + 3)]
        assert all(b <= a + 1e-14 for a, b in zip(errs, errs[1:]))
        assert all(e <= t.tail_bound + 1e-15 for e in errs[t.truncation_index:])


def test_conjugate_symmetry(disk_points):
    t = table(1.5, 2)
    lhs = eval_normalized(t, np.conj(disk_points))
    rhs = np.conj(eval_normalized(t, disk_points))
    assert np.max(np.abs(lhs - rhs)) <= 1e-14


def test_scalar_and_array_agree():
    t = table(2, 3)
    z = 0.2 + 0.9j
    assert isinstance(eval_normalized(t, z), complex)
    assert eval_normalized(t, np.array([z]))[0] == eval_normalized(t, z)
    assert cmath.isclose(eval_normalized(t, z), z * (1 + sum(a * z**n for n, a in enumerate(t.a, 1))), rel_tol=1e-14)
