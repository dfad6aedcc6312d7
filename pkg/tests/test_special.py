import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlpartial.errors import DomainError, TruncationError
from mlpartial.special import (
    MLParams,
    build_table,
    coefficient,
    log_gamma,
    pochhammer,
    pochhammer_lower_bound_check,
)


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (6.0, math.log(120.0)), (0.5, 0.5 * math.log(math.pi))],
)
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.013, 0.7, 3.3, 17.25, 123.4, 4.5e3, 9.99e5])
def test_log_gamma_matches_high_precision(x):
    with mp.workdps(30):
        ref = float(mp.loggamma(x))
    assert log_gamma(x) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan")])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_pochhammer_examples():
    assert pochhammer(3.7, 0) == 1.0
    assert pochhammer(2.0, 3) == 24.0
    assert pochhammer(1.5, 2) == pytest.approx(1.5 * 2.5, rel=1e-15)
    with pytest.raises(DomainError):
        pochhammer(0.0, 2)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=50.0), st.integers(min_value=1, max_value=50))
def test_pochhammer_recurrence(x, n):
    assert pochhammer(x, n) == pytest.approx(x * pochhammer(x + 1, n - 1), rel=1e-12)


@pytest.mark.parametrize("x, n", [(1.0, 5), (2.0, 3), (1.618, 4)])
def test_pochhammer_lower_bound_examples(x, n):
    prod = 1.0
    for k in range(n):
        prod *= x + k
    assert prod >= x**n
    assert pochhammer_lower_bound_check(x, n)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1.0, max_value=20.0), st.integers(min_value=1, max_value=40))
def test_pochhammer_lower_bound_property(x, n):
    assert pochhammer_lower_bound_check(x, n)


def test_coefficient_examples():
    assert coefficient(MLParams(1, 1), 3) == pytest.approx(1 / 6, rel=1e-13)
    assert coefficient(MLParams(2, 1), 2) == pytest.approx(1 / 24, rel=1e-13)
    # Gamma(2)/Gamma(4) = 1!/3!
    expected = Fraction(math.factorial(1), math.factorial(3))
    assert coefficient(MLParams(2, 2), 1) == pytest.approx(float(expected), rel=1e-13)
    with pytest.raises(DomainError):
        coefficient(MLParams(2, 2), 0)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("beta", [1.0, 1.5, 2.0, 3.0, 4.0])
def test_coefficient_below_inverse_pochhammer(alpha, beta):
    params = MLParams(alpha, beta)
    for n in range(1, 40):
        assert coefficient(params, n) <= (1 / pochhammer(beta, n)) * (1 + 1e-12)


@pytest.mark.parametrize("beta", [1.0, 1.25, 1.618, 2.0, 3.5, 5.0, 10.0])
def test_weighted_pochhammer_inequality(beta):
    for n in range(2, 40):
        lhs = n / pochhammer(beta, n)
        rhs = 1 / (beta * pochhammer(beta + 1, n - 2))
        assert lhs <= rhs * (1 + 1e-12)


def test_params_validation_and_flags():
    p = MLParams(2, 0.5)
    assert p.alpha_ge_1 and not p.beta_ge_1 and not p.lemma_hypotheses
    assert MLParams(1, 1).lemma_hypotheses
    for bad in [(0, 1), (1, -2), (float("inf"), 1)]:
        with pytest.raises(DomainError):
            MLParams(*bad)


def test_table_alpha2_beta2():
    table = build_table(MLParams(2, 2), tol=1e-15)
    n = table.truncation_index
    assert n <= 10
    assert table.tail_bound <= 1e-15 and table.weighted_tail_bound <= 1e-15
    for k, a in enumerate(table.a, start=1):
        assert a == pytest.approx(1 / math.factorial(2 * k + 1), rel=1e-13)


def test_table_alpha1_beta1_is_inverse_factorial():
    table = build_table(MLParams(1, 1), tol=1e-15)
    for k, a in enumerate(table.a, start=1):
        assert a == pytest.approx(1 / math.factorial(k), rel=1e-13)


def test_table_alpha1_beta2_covers_closed_form_sum():
    table = build_table(MLParams(1, 2), tol=1e-12)
    assert table.tail_bound <= 1e-12
    assert math.fsum(table.a) + table.tail_bound >= math.e - 2 - 1e-15


@pytest.mark.parametrize(
    "alpha, beta",
    [(1, 1), (1.5, 1), (2, 2), (3, 4), (4, 1.5), (0.5, 0.5), (0.3, 2.0), (1.2, 0.1)],
)
def test_tail_certificate_against_brute_force(alpha, beta):
    table = build_table(MLParams(alpha, beta), tol=1e-15)
    n0 = table.truncation_index
    with mp.workdps(40):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        terms = [mp.gamma(b) / mp.gamma(a * n + b) for n in range(n0 + 1, n0 + 201)]
        plain = mp.fsum(terms)
        weighted = mp.fsum((n0 + 1 + k + 1) * t for k, t in enumerate(terms))
    assert float(plain) <= table.tail_bound
    assert float(weighted) <= table.weighted_tail_bound


def test_table_is_decreasing_for_lemma_regime():
    for alpha, beta in [(1, 1), (1.5, 2), (3, 1)]:
        a = build_table(MLParams(alpha, beta)).a
        assert all(x > y > 0 for x, y in zip(a, a[1:]))


def test_table_truncation_failure():
    with pytest.raises(TruncationError):
        build_table(MLParams(0.05, 0.5), tol=1e-15, max_terms=50)
    with pytest.raises(DomainError):
        build_table(MLParams(1, 1), tol=0.0)


def test_table_is_immutable():
    table = build_table(MLParams(2, 3))
    with pytest.raises(AttributeError):
        table.truncation_index = 3
    with pytest.raises(ValueError):
        table.series[0] = 2.0


def test_table_coefficients_extend_past_truncation():
    table = build_table(MLParams(2, 2))
    n = table.truncation_index
    ext = table.coefficients(n + 3)
    assert len(ext) == n + 3
    assert ext[-1] == pytest.approx(1 / math.factorial(2 * (n + 3) + 1), rel=1e-12)
