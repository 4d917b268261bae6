#!/usr/bin/env python3
"""
Branch conventions of the elementary kernels.
"""

import cmath
import math

import pytest

from src.exceptions import BranchCutError, SingularPointError
from src.kernels.branch_kernels import (
    BranchSign,
    arccos_branch,
    log_pow,
    on_quad_cut,
    principal_log,
    quad_roots,
    sqrt_quad,
)


def test_quad_roots():
    assert quad_roots(4.0) == (4 + 0j, -4 + 0j)
    assert quad_roots(-1.0) == (2j, -2j)
    assert quad_roots(0.0) == (0j, 0j)


def test_sqrt_quad_values():
    assert abs(sqrt_quad(1.0, 3.0) - math.sqrt(5.0)) < 1e-15
    assert abs(sqrt_quad(-1.0, 1.0) - math.sqrt(5.0)) < 1e-15
    assert sqrt_quad(0.0, 2.0 - 1.0j) == 2.0 - 1.0j


def test_sqrt_quad_squares_back():
    for a in (1.0, -1.0, 2.5):
        for z in (3.0 + 1.0j, -0.5 - 4.0j, 10.0, 0.3 + 0.2j):
            s = sqrt_quad(a, z)
            assert abs(s * s - (z * z - 4 * a)) < 1e-12 * (1 + abs(z) ** 2)


def test_sqrt_quad_behaves_like_z_at_infinity():
    for theta in (0.1, 1.0, 2.0, 3.0, -1.5, -3.0):
        z = 1e6 * cmath.exp(1j * theta)
        assert abs(sqrt_quad(1.0, z) / z - 1) < 1e-6
    # a < 0 also for points outside the strip |Im z| < 2 sqrt(A)
    assert abs(sqrt_quad(-1.0, complex(-1e6, 5.0)) / complex(-1e6, 5.0) - 1) < 1e-6


def test_sqrt_quad_inside_left_strip():
    z = complex(-1e6, 1.0)
    assert abs(sqrt_quad(-1.0, z) / (-z) - 1) < 1e-6


def test_sqrt_quad_on_cut():
    assert on_quad_cut(1.0, 0.5 + 0j)
    assert on_quad_cut(-1.0, complex(-1.0, 2.0))
    assert not on_quad_cut(-1.0, complex(1.0, 2.0))
    with pytest.raises(BranchCutError):
        sqrt_quad(1.0, 0.5)
    with pytest.raises(ValueError):
        sqrt_quad(-1.0, complex(-3.0, -2.0))


def test_log_pow():
    assert abs(log_pow(-1.0, 0.5).to_complex() - 1j) < 1e-15
    assert log_pow(0.0, 2.0).is_zero
    assert log_pow(7.0 - 2.0j, 0).to_complex() == 1
    big = log_pow(10.0, 400.0)
    assert abs(big.log_abs() - 400 * math.log(10.0)) < 1e-9
    with pytest.raises(SingularPointError):
        log_pow(0.0, -1.0)


def test_principal_log():
    assert abs(principal_log(-1.0) - 1j * math.pi) < 1e-15
    with pytest.raises(SingularPointError):
        principal_log(0.0)


def test_arccos_branch():
    assert abs(arccos_branch(1.0)) < 1e-15
    assert abs(arccos_branch(0.0) - math.pi / 2) < 1e-15
    assert abs(arccos_branch(-1.0) - math.pi) < 1e-15


def test_branch_sign():
    assert BranchSign.PLUS.apply(2.0 + 1.0j) == 2.0 + 1.0j
    assert BranchSign.MINUS.apply(3.0) == -3.0
