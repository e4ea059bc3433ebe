import cmath
import math
import random

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from bethekit.errors import PoleAtCoincidentArguments
from bethekit.linalg import identity_matrix, max_abs
from bethekit.rmatrix import (
    Kernel,
    build_r_matrix,
    kernel_f,
    kernel_g,
    permutation_matrix,
    yang_baxter_residual,
)
from bethekit.sampling import distinct_complexes, distinct_rationals


def test_kernel_construction():
    assert Kernel.rational().kind == "rational"
    assert Kernel.trigonometric(0.7).eta == 0.7 + 0j
    with pytest.raises(ValueError):
        Kernel("sixvertex")
    with pytest.raises(ValueError):
        Kernel("rational", eta=1.0)
    with pytest.raises(ValueError):
        Kernel("trigonometric")
    with pytest.raises(ValueError):
        Kernel.trigonometric(1j * math.pi)  # sinh vanishes


def test_rational_weights_frozen():
    k = Kernel.rational()
    assert kernel_f(k, mpq(1, 2), mpq(-3, 4)) == mpq(9, 5)
    assert kernel_g(k, mpq(1, 2), mpq(-3, 4)) == mpq(4, 5)
    # f = 1 + g identically for the rational kernel
    for lam, mu in ((mpq(2), mpq(1, 3)), (mpq(-5, 7), mpq(1))):
        assert kernel_f(k, lam, mu) == 1 + kernel_g(k, lam, mu)


def test_trigonometric_weights():
    eta = 0.9 + 0.2j
    k = Kernel.trigonometric(eta)
    lam, mu = 0.4 + 0.1j, -0.3 - 0.2j
    u = lam - mu
    assert abs(kernel_f(k, lam, mu) - cmath.sinh(u + eta) / cmath.sinh(u)) < 1e-15
    assert abs(kernel_g(k, lam, mu) - cmath.sinh(eta) / cmath.sinh(u)) < 1e-15
    # at separation eta the ratio collapses to 2 cosh(eta)
    assert abs(kernel_f(k, mu + eta, mu) - 2 * cmath.cosh(eta)) < 1e-13


def test_coincident_arguments_are_poles():
    with pytest.raises(PoleAtCoincidentArguments):
        kernel_f(Kernel.rational(), mpq(1, 3), mpq(1, 3))
    with pytest.raises(PoleAtCoincidentArguments):
        kernel_g(Kernel.trigonometric(0.8), 0.5 + 0j, 0.5 + 0j)


def test_r_matrix_structure():
    k = Kernel.rational()
    r = build_r_matrix(k, mpq(1, 2), mpq(-1, 3))
    f = kernel_f(k, mpq(1, 2), mpq(-1, 3))
    g = kernel_g(k, mpq(1, 2), mpq(-1, 3))
    assert r[0, 0] == f and r[3, 3] == f
    assert r[1, 1] == 1 and r[2, 2] == 1
    assert r[1, 2] == g and r[2, 1] == g
    stray = [(i, j) for i in range(4) for j in range(4)
             if r[i, j] != 0 and (i, j) not in ((0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1))]
    assert stray == []


def test_r_matrix_difference_property():
    # shifting both arguments leaves every entry unchanged
    k = Kernel.rational()
    r1 = build_r_matrix(k, mpq(1, 2), mpq(-1, 3))
    r2 = build_r_matrix(k, mpq(1, 2) + 7, mpq(-1, 3) + 7)
    assert (r1 == r2).all()


def test_rational_r_is_identity_plus_g_permutation():
    k = Kernel.rational()
    lam, mu = mpq(4, 3), mpq(-1, 2)
    r = build_r_matrix(k, lam, mu)
    g = kernel_g(k, lam, mu)
    expected = identity_matrix(4, "exact") + permutation_matrix("exact") * g
    assert (r == expected).all()


def test_yang_baxter_exact_zero():
    k = Kernel.rational()
    rng = random.Random(11)
    for _ in range(10):
        l1, l2, l3 = distinct_rationals(rng, 3)
        assert yang_baxter_residual(k, l1, l2, l3) == 0


def test_yang_baxter_trigonometric_small():
    k = Kernel.trigonometric(0.75 + 0.15j)
    rng = random.Random(12)
    for _ in range(10):
        l1, l2, l3 = distinct_complexes(rng, 3)
        assert yang_baxter_residual(k, l1, l2, l3) < 1e-12


def test_yang_baxter_pole_on_coincident_points():
    with pytest.raises(PoleAtCoincidentArguments):
        yang_baxter_residual(Kernel.rational(), mpq(1), mpq(1), mpq(2))


@settings(max_examples=25, deadline=None)
@given(st.integers(-9, 9), st.integers(1, 6), st.integers(-9, 9),
       st.integers(1, 6), st.integers(-9, 9), st.integers(1, 6))
def test_yang_baxter_property(p1, q1, p2, q2, p3, q3):
    vals = (mpq(p1, q1), mpq(p2, q2), mpq(p3, q3))
    if len({vals[0], vals[1], vals[2]}) < 3:
        return
    assert yang_baxter_residual(Kernel.rational(), *vals) == 0
