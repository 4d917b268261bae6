#!/usr/bin/env python3
"""
Exact evaluation of pi_n by the recurrence, ratios and the family presets.
"""

import math

import numpy as np
import pytest

from src.arithmetic.backends import OracleMode
from src.arithmetic.scaled_complex import scale_normalize, scaled_rel_error
from src.asymptotics.base_formula import power_of_i
from src.exceptions import InvalidInputError, NearZeroRatioError
from src.recurrence.params import CaseTag, RecurrenceParams, family_preset
from src.recurrence.recurrence_core import (
    eval_family,
    eval_pi,
    eval_pi_adaptive,
    eval_pi_batch,
    eval_pi_deriv,
    log_product,
    ratio_sequence,
    wk_asymptotic,
)


def test_case_tags(case_params):
    for tag, params in case_params.items():
        assert params.case_tag is CaseTag(tag)
    assert RecurrenceParams(-2.0, 1.0, 0.0).case_tag is CaseTag.IA
    assert RecurrenceParams(-2.0, 1.0, 0.0).normalized() == (RecurrenceParams(2.0, 1.0, 0.0), True)


def test_params_reject_non_finite():
    with pytest.raises(InvalidInputError):
        RecurrenceParams(math.nan, 1.0, 0.0)
    with pytest.raises(InvalidInputError):
        RecurrenceParams(0.0, "slope", 0.0)


def test_low_degrees():
    """pi_0 = 1, pi_1 = x, pi_2 = x(x - d) - (a + b)"""
    params = RecurrenceParams(1.5, 0.75, -0.25)
    x = 2.0 + 0.5j
    assert eval_pi(params, x, 0).value.to_complex() == 1
    assert eval_pi(params, x, 1).value.to_complex() == x
    expected = x * (x - 1.5) - (0.75 - 0.25)
    assert abs(eval_pi(params, x, 2).value.to_complex() - expected) < 1e-14


def test_second_degree_derivative():
    params = RecurrenceParams(1.0, 2.0, 0.5)
    result = eval_pi_deriv(params, 3.0, 2)
    assert result.value.to_complex() == 3.0 * 2.0 - 2.5
    assert result.derivative.to_complex() == 2 * 3.0 - 1.0


def test_hermite_cubic():
    params = family_preset("hermite").params
    for x in (0.3, -1.7, 2.0 + 1.0j):
        value = eval_pi(params, x, 3).value.to_complex()
        assert abs(value - (x ** 3 - 1.5 * x)) < 1e-13


def test_native_matches_rational_on_integers():
    params = RecurrenceParams(1.0, 1.0, 0.0)
    for x in (3.0, -7.0, 12.0):
        native = eval_pi(params, x, 9).value
        exact = eval_pi(params, x, 9, OracleMode.RATIONAL).value
        assert native == exact


def test_highprec_matches_rational():
    params = RecurrenceParams(0.5, -0.75, 0.125)
    exact = eval_pi(params, 3.25 + 0.5j, 40, OracleMode.RATIONAL).value
    highprec = eval_pi(params, 3.25 + 0.5j, 40, OracleMode.HIGHPREC, bits=256).value
    assert scaled_rel_error(highprec, exact) < 1e-15


def test_degree_1600_stays_finite():
    """Values far beyond the double range come back with a large exponent"""
    params = RecurrenceParams(1.0, 1.0, 0.0)
    n = 1600
    x = n + math.sqrt(n) * 3.0
    value = eval_pi(params, x, n).value
    assert value.exponent > 1024
    from_ratios = log_product(ratio_sequence(params, x, n))
    assert scaled_rel_error(value, from_ratios) < 1e-10


def test_batch_matches_single_evaluations():
    params = RecurrenceParams(0.0, 0.5, 0.0)
    xs = np.array([-3.0, 0.25, 1.0 + 2.0j, 5.0])
    values, derivs, exponents = eval_pi_batch(params, xs, 30, with_derivative=True)
    for j, x in enumerate(xs):
        single = eval_pi_deriv(params, complex(x), 30)
        value = scale_normalize(complex(values[j]), int(exponents[j]))
        derivative = scale_normalize(complex(derivs[j]), int(exponents[j]))
        assert scaled_rel_error(value, single.value) < 1e-14
        assert scaled_rel_error(derivative, single.derivative) < 1e-14


def test_invalid_degree():
    params = RecurrenceParams(1.0, 1.0, 0.0)
    with pytest.raises(InvalidInputError):
        eval_pi(params, 1.0, -1)
    with pytest.raises(InvalidInputError):
        eval_pi(params, 1.0, 2.5)


def test_ratio_sequence_values():
    ratios = ratio_sequence(RecurrenceParams(1.0, 1.0, 0.0), 10.0, 2)
    assert ratios[0] == 10
    assert abs(ratios[1] - 8.9) < 1e-15


def test_ratio_sequence_near_zero():
    with pytest.raises(NearZeroRatioError) as info:
        ratio_sequence(RecurrenceParams(0.0, 0.0, 0.25), 0.0, 3)
    assert info.value.k == 1


def test_wk_asymptotic_in_outer_region():
    params = RecurrenceParams(1.0, 1.0, 0.0)
    n = 1600
    x = n + math.sqrt(n) * 3.0
    exact = ratio_sequence(params, x, n)[-1]
    approx = wk_asymptotic(params, x, n, n)
    assert abs(approx / exact - 1) < 2e-3
    with pytest.raises(InvalidInputError):
        wk_asymptotic(params, x, n + 1, n)


def test_charlier_preset_translation():
    assert abs(eval_family("charlier", 5.0, 1, 2.0).value.to_complex() - 3.0) < 1e-15
    with pytest.raises(InvalidInputError):
        family_preset("charlier")
    with pytest.raises(InvalidInputError):
        family_preset("legendre")


def test_chebyshev_preset_values():
    """pi_n(cos t) = sin((n+1)t) / (2**n sin t)"""
    t = 0.7
    for n in (1, 4, 11):
        value = eval_family("chebyshev", math.cos(t), n).value.to_complex()
        expected = math.sin((n + 1) * t) / (2 ** n * math.sin(t))
        assert abs(value - expected) < 1e-13


def _random_params(rng, d_zero=False):
    d = 0.0 if d_zero else float(rng.uniform(-2.0, 2.0))
    return RecurrenceParams(d, float(rng.uniform(-2.0, 2.0)), float(rng.uniform(-1.0, 1.0)))


def _random_point(rng, scale):
    return complex(rng.normal(0.0, scale), rng.normal(0.0, scale))


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_reflection_identity(seed):
    """pi_n(x; d, a, b) = (-1)**n pi_n(-x; -d, a, b)"""
    rng = np.random.default_rng(seed)
    for _ in range(25):
        params = _random_params(rng)
        mirrored = RecurrenceParams(-params.d, params.a, params.b)
        n = int(rng.integers(1, 201))
        x = _random_point(rng, 3.0 * (1.0 + abs(params.d) * n))
        left = eval_pi(params, x, n).value
        right = eval_pi(mirrored, -x, n).value.scale((-1.0) ** n)
        assert scaled_rel_error(left, right) < 1e-12


@pytest.mark.parametrize("seed", [5, 6, 7, 8])
def test_rotation_identity(seed):
    """i**(-n) pi_n(i x; 0, a, b) = pi_n(x; 0, -a, -b)"""
    rng = np.random.default_rng(seed)
    for _ in range(25):
        params = _random_params(rng, d_zero=True)
        rotated = RecurrenceParams(0.0, -params.a, -params.b)
        n = int(rng.integers(1, 201))
        x = _random_point(rng, 3.0)
        left = eval_pi(params, 1j * x, n).value.scale(power_of_i(-n))
        right = eval_pi(rotated, x, n).value
        assert scaled_rel_error(left, right) < 1e-12


@pytest.mark.parametrize("mode", [OracleMode.RATIONAL, OracleMode.NATIVE])
def test_conjugation_symmetry(mode):
    """Real coefficients give pi_n(conj x) = conj pi_n(x); exact in rational arithmetic"""
    rng = np.random.default_rng(9)
    for _ in range(40):
        params = _random_params(rng)
        n = int(rng.integers(1, 31))
        x = _random_point(rng, 2.0 + abs(params.d) * n)
        value = eval_pi(params, x, n, mode).value
        mirrored = eval_pi(params, x.conjugate(), n, mode).value
        if mode is OracleMode.RATIONAL:
            assert mirrored == value.conjugate()
        else:
            assert scaled_rel_error(mirrored, value.conjugate()) < 1e-13


@pytest.mark.parametrize("seed", [10, 11])
def test_derivative_matches_central_difference(seed):
    """Points outside twice the Gershgorin radius keep the difference quotient well conditioned"""
    rng = np.random.default_rng(seed)
    for _ in range(50):
        params = _random_params(rng)
        n = int(rng.integers(1, 51))
        radius = abs(params.d) * n + 2.0 * math.sqrt(abs(params.a) * n + abs(params.b))
        theta = rng.uniform(0.0, 2.0 * math.pi)
        x = (2.0 * radius + 10.0) * complex(math.cos(theta), math.sin(theta))
        h = 1e-6 * (1.0 + abs(x))
        forward = eval_pi(params, x + h, n).value
        backward = eval_pi(params, x - h, n).value
        difference = (forward - backward).scale(1.0 / (2.0 * h))
        derivative = eval_pi_deriv(params, x, n).derivative
        assert scaled_rel_error(difference, derivative) < 1e-6


@pytest.mark.parametrize("params, x", [
    (RecurrenceParams(1.0, 1.0, 0.0), 400.0 + 20.0 * 3.0),
    (RecurrenceParams(0.0, 1.0, 0.0), 20.0 * 3.0),
])
def test_wk_asymptotic_over_all_k(params, x):
    """Outer point at n = 400: z = 3 for d = 1, y = 3 for d = 0"""
    n = 400
    ratios = ratio_sequence(params, x, n)
    worst = max(abs(wk_asymptotic(params, x, k, n) / ratios[k - 1] - 1.0) for k in range(1, n + 1))
    assert worst < 0.05


@pytest.mark.parametrize("tag, start", [
    ("IA", 130.0), ("IB", 130.0), ("IC", 200.0), ("IIA", 30.0), ("IIB", 2.0), ("IIC", 2.0),
])
def test_native_matches_rational_on_dyadic_points(case_params, tag, start):
    """20 points start + j/8, exactly representable, at n = 100"""
    params = case_params[tag]
    n = 100
    for j in range(20):
        x = start + j / 8.0
        native = eval_pi(params, x, n).value
        exact = eval_pi(params, x, n, OracleMode.RATIONAL).value
        assert scaled_rel_error(native, exact) < 1e-12


def test_adaptive_oracle_escalates_precision(case_params):
    """Case IB on the stem at n = 1600: 64 bits cancel away, the escalated value holds"""
    params = case_params["IB"]
    n = 1600
    x = n + math.sqrt(n) * -5.03
    reference = eval_pi(params, x, n, OracleMode.HIGHPREC, bits=1024).value
    for bits in (64, 256):
        adaptive = eval_pi_adaptive(params, x, n, bits=bits, max_bits=2048).value
        assert scaled_rel_error(adaptive, reference) < 1e-12
    with pytest.raises(InvalidInputError):
        eval_pi_adaptive(params, x, n, bits=32)
