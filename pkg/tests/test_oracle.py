"""Oracle tests: closed forms vs mode-sum functionals and quadrature policies."""

import numpy as np
import pytest

from embath.coeffs import second_order, t2_closed, t3_closed, t4_closed
from embath.errors import ValidationError
from embath.model import ReducedParams
from embath.oracle import (
    CorrelationKernel,
    QuadratureSpec,
    coefficient_oracle,
    pair_correlation,
    t2_oracle,
    t3_oracle,
    t4_oracle,
)

POINTS = (
    ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=1.0),
    ReducedParams(omega_tilde=0.3, Omega_tilde=0.5, z=0.2),
    ReducedParams(omega_tilde=3.0, Omega_tilde=0.02, z=10.0),
)


def _compare(result, closed, rel):
    for name, oracle_val in result.values.items():
        cv = closed.parts[name]
        assert abs(oracle_val - cv) <= rel * max(abs(cv), 1e-14), name


@pytest.mark.parametrize("p", POINTS)
def test_t2_matches_closed(p):
    k = CorrelationKernel(params=p)
    _compare(t2_oracle(k), t2_closed(p), 1e-10)


@pytest.mark.parametrize("p", POINTS)
def test_t3_matches_closed(p):
    k = CorrelationKernel(params=p)
    _compare(t3_oracle(k), t3_closed(p), 1e-10)


@pytest.mark.parametrize("p", POINTS)
def test_t4_matches_closed(p):
    k = CorrelationKernel(params=p)
    _compare(t4_oracle(k), t4_closed(p), 1e-10)


def test_error_estimates_bound_truth():
    p = POINTS[0]
    k = CorrelationKernel(params=p)
    res = t2_oracle(k)
    closed = t2_closed(p).parts
    for name, v in res.values.items():
        # the reported estimate should not understate the true error by
        # more than an order of magnitude
        true_err = abs(v - closed[name])
        assert true_err <= 10.0 * res.errors[name] + 1e-12


def test_mode_count_invariance():
    p = ReducedParams(omega_tilde=0.7, Omega_tilde=0.2, z=3.0)
    k = CorrelationKernel(params=p)
    a = t3_oracle(k, QuadratureSpec(matsubara_terms=2000)).values
    b = t3_oracle(k, QuadratureSpec(matsubara_terms=8000)).values
    for name in a:
        assert abs(a[name] - b[name]) <= 1e-10 * max(abs(b[name]), 1e-12)


def test_pair_correlation_policies_agree():
    p = ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=1.0)
    k = CorrelationKernel(params=p)
    for t in (0.05, 0.37, 1.0, 2.5, 5.0):
        a = pair_correlation(t, k, "matsubara")
        b = pair_correlation(t, k, "frequency")
        assert abs(a - b) <= 1e-5 * abs(a) + 1e-10, t


def test_pair_correlation_symmetry_and_imag():
    p = ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=0.8)
    k = CorrelationKernel(params=p)
    v = pair_correlation(1.3, k)
    assert pair_correlation(-1.3, k) == v.conjugate()
    # the imaginary part is temperature independent: -(W/2) exp(-t)
    assert v.imag == pytest.approx(-0.05 * np.exp(-1.3), rel=1e-12)
    with pytest.raises(ValidationError):
        pair_correlation(0.0, k)
    with pytest.raises(ValidationError):
        pair_correlation(1.0, k, "nope")


def test_t2_time_domain_policy():
    p = ReducedParams(omega_tilde=0.5, Omega_tilde=0.3, z=2.0)
    k = CorrelationKernel(params=p)
    res = t2_oracle(k, QuadratureSpec(method="time_domain"))
    closed = t2_closed(p).parts
    for name, v in res.values.items():
        assert abs(v - closed[name]) <= 1e-9 * abs(closed[name])


def test_coefficient_oracle_matches_direct():
    p = POINTS[0]
    oc = coefficient_oracle(p)
    direct = second_order(p)
    for name in ("a1", "a2", "a3", "a4"):
        assert getattr(oc[2], name) == pytest.approx(getattr(direct, name), abs=1e-10)
    assert oc[3].a4 == pytest.approx(0.005, abs=1e-10)
    assert oc[4].a4 == pytest.approx(-0.00275, abs=1e-10)


def test_near_resonant_z():
    # z = k*pi puts a thermal mode on top of the bath pole; the grouped form
    # must stay finite and accurate
    p = ReducedParams(omega_tilde=1.2, Omega_tilde=0.2, z=float(np.pi))
    k = CorrelationKernel(params=p)
    _compare(t2_oracle(k), t2_closed(p), 1e-9)
    _compare(t3_oracle(k), t3_closed(p), 1e-9)
