"""Polygamma and hyperbolic helper tests against recurrences and mpmath."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from embath.errors import DomainError, OrderError, PoleError
from embath.special import coth_partial_sum, csch_sq, polygamma

RNG = np.random.default_rng(20240817)


def _random_args(n):
    re = RNG.uniform(-8.0, 20.0, n)
    im = RNG.uniform(-30.0, 30.0, n)
    out = []
    for r, i in zip(re, im):
        z = complex(r, i)
        if abs(i) < 1e-3 and r < 0.5:
            z += 0.5j  # keep away from the pole line
        out.append(z)
    return out


@pytest.mark.parametrize("order", [0, 1, 2])
def test_recurrence(order):
    sign = (-1.0) ** order
    fact = math.factorial(order)
    for z in _random_args(60):
        lhs = polygamma(order, z + 1.0) - polygamma(order, z)
        rhs = sign * fact / z ** (order + 1)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@pytest.mark.parametrize("order", [0, 1, 2])
def test_conjugate_symmetry(order):
    for z in _random_args(30):
        a = polygamma(order, z.conjugate())
        b = polygamma(order, z)
        assert abs(a - b.conjugate()) <= 1e-13 * max(1.0, abs(b))


def test_finite_difference_psi1():
    h = 1e-5
    for z in _random_args(20):
        fd = (polygamma(0, z + h) - polygamma(0, z - h)) / (2.0 * h)
        val = polygamma(1, z)
        assert abs(fd - val) <= 1e-6 * max(1.0, abs(val))


def test_against_mpmath():
    mpmath.mp.dps = 30
    pts = [0.25, 1.0, 2.5, 17.3, complex(1.0, -0.5), complex(0.3183, 0.0),
           complex(-2.3, 4.1), complex(1.0, -31.8), complex(0.01, 0.7)]
    for order in (0, 1, 2):
        for z in pts:
            want = complex(mpmath.polygamma(order, mpmath.mpc(z)))
            got = complex(polygamma(order, z))
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want)), (order, z)


def test_real_in_real_out():
    v = polygamma(0, 3.7)
    assert isinstance(v, float)
    assert isinstance(polygamma(1, 1 - 0.5j), complex)


def test_poles_and_order_validation():
    for bad in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            polygamma(0, bad)
    with pytest.raises(OrderError):
        polygamma(3, 1.0)
    with pytest.raises(DomainError):
        polygamma(0, math.inf)


def test_coth_partial_sum_monotone_bounded():
    x = 0.8
    prev = -math.inf
    for n in (0, 1, 10, 100, 10_000):
        s = coth_partial_sum(x, n)
        assert s >= prev
        assert s <= 1.0 / math.tanh(x) + 1e-15
        prev = s
    with pytest.raises(DomainError):
        coth_partial_sum(-1.0, 10)


def test_coth_partial_sum_convergence():
    # one-million-term tail is O(2x/(pi^2 n)), comfortably below 1e-6 here
    for x in (0.003, 0.5, 2.0):
        s = coth_partial_sum(x, 1_000_000)
        assert abs(s - 1.0 / math.tanh(x)) <= 1e-6


def test_csch_sq():
    for x in (1e-6, 1e-3, 0.1, 1.0, 10.0, 400.0):
        want = 1.0 / math.sinh(x) ** 2 if x < 300 else 4.0 * math.exp(-2.0 * x)
        assert abs(csch_sq(x) - want) <= 1e-10 * max(want, 1e-300) + 1e-300
    assert csch_sq(-2.0) == csch_sq(2.0)
    with pytest.raises(DomainError):
        csch_sq(0.0)
