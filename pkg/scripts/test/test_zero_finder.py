#!/usr/bin/env python3
"""
Aberth zero finder, residual certificates and the distance of zeros to
the asymptotic zero sets.
"""

import numpy as np
import pytest

from src.exceptions import ConvergenceError, InvalidInputError
from src.recurrence.params import RecurrenceParams
from src.zeros import (
    find_zeros,
    scale_zeros,
    tridiagonal_zeros,
    zero_residuals,
    zeros_vs_Yset,
)


def test_chebyshev_zeros(case_params):
    zero_set = find_zeros(case_params["IIC"], 20)
    expected = np.sort(np.cos(np.arange(1, 21) * np.pi / 21))
    assert len(zero_set.zeros) == 20
    assert np.max(np.abs(zero_set.zeros.real - expected)) < 1e-8
    assert np.max(np.abs(zero_set.zeros.imag)) < 1e-8
    assert zero_set.certified()


def test_hermite_zeros_are_real_and_symmetric(case_params):
    zeros = find_zeros(case_params["IIA"], 50).zeros
    assert np.max(np.abs(zeros.imag)) < 1e-8
    assert np.max(np.abs(zeros.real + zeros.real[::-1])) < 1e-8


def test_rotated_case_zeros_are_imaginary(case_params):
    zero_set = find_zeros(case_params["IIB"], 50)
    assert np.max(np.abs(zero_set.zeros.real)) < 1e-8
    # scaled coordinates sit on the real axis of the rotated variable
    assert np.max(np.abs(zero_set.scaled.imag)) < 1e-8


def test_matches_jacobi_eigenvalues(case_params):
    params = case_params["IIA"]
    eigenvalues = np.sort(tridiagonal_zeros(params, 20).real)
    zeros = find_zeros(params, 20).zeros.real
    assert np.max(np.abs(zeros - eigenvalues)) < 1e-8


def test_residual_values():
    params = RecurrenceParams(0.0, 0.0, 0.25)
    exact = np.cos(np.arange(1, 11) * np.pi / 11)
    assert np.max(zero_residuals(params, exact)) < 1e-10
    perturbed = exact.copy()
    perturbed[3] += 0.01
    assert zero_residuals(params, perturbed)[3] > 1e-3
    assert zero_residuals(RecurrenceParams(2.0, -3.0, 1.0), [0.0])[0] == 0.0


def test_degree_two_closed_form():
    rng = np.random.default_rng(3)
    for _ in range(100):
        d, a, b = rng.normal(size=3)
        params = RecurrenceParams(d, a, b)
        zeros = find_zeros(params, 2).zeros
        c = a + b
        assert abs(zeros.sum() - d) < 1e-12 * (1 + abs(d))
        assert abs(zeros.prod() + c) < 1e-12 * (1 + abs(c) + d * d)


def test_reflection_negates_zeros():
    n = 30
    right = find_zeros(RecurrenceParams(1.0, 1.0, 0.0), n).zeros
    left = find_zeros(RecurrenceParams(-1.0, 1.0, 0.0), n).zeros
    mirrored = np.sort_complex(-left)
    assert np.all(np.abs(np.sort_complex(right) - mirrored) < 1e-8 * (1 + np.abs(right)))


def test_conjugate_symmetry_and_certificate(case_params):
    zero_set = find_zeros(case_params["IB"], 60)
    zeros = zero_set.zeros
    for z in zeros:
        assert np.min(np.abs(zeros - np.conj(z))) < 1e-8
    assert zero_set.max_residual() < 1e-6


def test_case_IA_zeros_near_real_segment(case_params):
    """Charlier-type zeros: scaled zeros within 0.15 of [-sqrt(n) d, 2 sqrt(a)]"""
    zero_set = find_zeros(case_params["IA"], 100)
    scaled = zero_set.scaled
    assert np.max(np.abs(scaled.imag)) < 1e-8
    assert scaled.real.min() > -10.0 - 0.15
    assert scaled.real.max() < 2.0 + 0.15


def test_scale_zeros(case_params):
    assert scale_zeros(case_params["IA"], 4, [6.0])[0] == 1.0
    assert scale_zeros(case_params["IIA"], 4, [3.0])[0] == 1.5
    assert scale_zeros(case_params["IIB"], 4, [2.0j])[0] == 1.0
    assert scale_zeros(RecurrenceParams(0.0, 0.0, 1.0), 4, [1.0])[0] == 0.5


def test_serialization(case_params):
    zero_set = find_zeros(case_params["IIC"], 8)
    rows = zero_set.to_rows()
    assert len(rows) == 8
    assert all(len(row) == 5 for row in rows)
    data = zero_set.to_dict()
    assert data["n"] == 8
    assert data["params"]["case_tag"] == "IIC"


def test_deterministic(case_params):
    first = find_zeros(case_params["IB"], 40).zeros
    second = find_zeros(case_params["IB"], 40).zeros
    assert np.array_equal(first, second)


def test_invalid_input(case_params):
    with pytest.raises(InvalidInputError):
        find_zeros(case_params["IA"], 0)
    with pytest.raises(InvalidInputError):
        find_zeros(case_params["IA"], 10, tol=0.0)
    with pytest.raises(InvalidInputError):
        zeros_vs_Yset(case_params["IA"], 10, None)


def test_non_convergence_reports_partial_result(case_params):
    with pytest.raises(ConvergenceError) as info:
        find_zeros(case_params["IB"], 40, maxiter=1)
    assert info.value.partial.n == 40
    assert info.value.unconverged


@pytest.mark.slow
def test_case_IB_zeros_follow_the_Y_set(case_params, curve_a1):
    """Largest distance to the Y-shaped set does not grow with n and is below 0.25 from n = 200"""
    params = case_params["IB"]
    distances = [zeros_vs_Yset(params, n, curve_a1) for n in (100, 200, 400)]
    assert distances[2] <= distances[1] <= distances[0]
    assert distances[1] < 0.25
    assert distances[2] < 0.25


def test_case_IA_left_zero_spacing(case_params):
    """Left of -2 sqrt(a) the zeros are spaced d / sqrt(n) in z, to 10% at n = 400"""
    params = case_params["IA"]
    n = 400
    scaled = find_zeros(params, n).scaled.real
    left = np.sort(scaled[(scaled > -16.0) & (scaled < -6.0)])
    assert len(left) > 150
    spacing = params.d / np.sqrt(n)
    assert np.max(np.abs(np.diff(left) - spacing)) < 0.1 * spacing
