"""Closed-form coefficient tests: spot values, identities, limits."""

import math

import numpy as np
import pytest

from embath.coeffs import (
    aggregate,
    coeffs_from_t,
    delta_compact,
    fourth_order,
    high_T_limits,
    lambda_compact,
    low_T_limits,
    second_order,
    t2_closed,
    t3_closed,
    t4_closed,
    third_order,
)
from embath.errors import OrderError
from embath.model import ReducedParams

P0 = ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=1.0)

RNG = np.random.default_rng(42)


def _random_points(n):
    w = np.exp(RNG.uniform(math.log(0.05), math.log(10.0), n))
    W = np.exp(RNG.uniform(math.log(1e-3), math.log(0.9), n))
    z = np.exp(RNG.uniform(math.log(0.02), math.log(80.0), n))
    return [ReducedParams(omega_tilde=a, Omega_tilde=b, z=c) for a, b, c in zip(w, W, z)]


def test_spot_values():
    o2 = second_order(P0)
    assert o2.a1 == pytest.approx(-0.05, abs=1e-15)
    assert o2.a4 == pytest.approx(-0.05, abs=1e-15)
    assert third_order(P0).a4 == pytest.approx(0.005, rel=1e-12)
    assert fourth_order(P0).a4 == pytest.approx(-0.00275, rel=1e-12)
    assert aggregate(P0).lambda_ == pytest.approx(-0.04775, rel=1e-12)


def test_compact_identities_on_grid():
    for p in _random_points(200):
        mc = aggregate(p)
        d, lam = delta_compact(p), lambda_compact(p)
        assert abs(mc.delta - d) <= 1e-12 * max(abs(d), 1e-12)
        assert abs(mc.lambda_ - lam) <= 1e-12 * max(abs(lam), 1e-12)


def test_t_integral_mapping_matches_direct_coefficients():
    for p in _random_points(12):
        pairs = (
            (t2_closed(p), second_order(p)),
            (t3_closed(p), third_order(p)),
            (t4_closed(p), fourth_order(p)),
        )
        for tset, direct in pairs:
            mapped = coeffs_from_t(tset, p.omega_tilde)
            for name in ("a1", "a2", "a3", "a4"):
                a, b = getattr(mapped, name), getattr(direct, name)
                assert abs(a - b) <= 1e-11 * abs(b) + 1e-15, (tset.order, name)


def test_delta_ratio_sign_flip_at_resonance():
    # the third-order ratio vanishes exactly at omega_tilde = 1; the
    # fourth-order crossing carries an O(Omega_tilde) offset and approaches
    # 1 in the weak-cutoff limit
    def ratios(w, W):
        p = ReducedParams(omega_tilde=w, Omega_tilde=W, z=1.0)
        o2, o3, o4 = aggregate(p).per_order
        return o3.a1 / o2.a1, o4.a1 / o2.a1

    assert abs(ratios(1.0, 0.1)[0]) < 1e-12
    assert ratios(0.9, 0.1)[0] * ratios(1.1, 0.1)[0] < 0.0
    assert ratios(0.95, 1e-3)[1] * ratios(1.05, 1e-3)[1] < 0.0


def test_lambda_order_signs_on_fig_grid():
    for w in np.geomspace(0.1, 10.0, 12):
        for W in np.geomspace(1e-3, 0.9, 12):
            p = ReducedParams(omega_tilde=float(w), Omega_tilde=float(W), z=1.0)
            o2, o3, o4 = aggregate(p).per_order
            assert o2.a4 < 0.0
            assert o3.a4 / o2.a4 < 0.0
            assert o4.a4 / o2.a4 > 0.0


def test_aggregate_orders():
    assert len(aggregate(P0, max_order=2).per_order) == 1
    assert aggregate(P0, max_order=3).delta == pytest.approx(
        second_order(P0).a1 + third_order(P0).a1
    )
    with pytest.raises(OrderError):
        aggregate(P0, max_order=5)


def test_high_T_limits_match():
    for w, W in ((0.3, 0.1), (2.0, 0.4), (5.0, 0.02)):
        p = ReducedParams(omega_tilde=w, Omega_tilde=W, z=1e-3)
        lim = high_T_limits(p)
        full = {o.order: (o.d_xx, o.d_xp) for o in aggregate(p).per_order}
        for order in (2, 3, 4):
            for i in range(2):
                assert abs(full[order][i] - lim[order][i]) <= 5e-3 * abs(lim[order][i])


def test_low_T_limits_match():
    for w, W in ((0.3, 0.1), (2.0, 0.4), (5.0, 0.02)):
        p = ReducedParams(omega_tilde=w, Omega_tilde=W, z=1e3)
        lim = low_T_limits(p)
        full = {o.order: (o.d_xx, o.d_xp) for o in aggregate(p).per_order}
        for order in (2, 3, 4):
            for i in range(2):
                assert abs(full[order][i] - lim[order][i]) <= 1e-2 * abs(lim[order][i])


def test_small_coupling_contributions():
    # third and fourth order contributions below 1% of second order deep in
    # the weak-cutoff regime (at the literal boundary Omega*tau_e = 0.01 the
    # damping ratio reaches ~2% at the low-frequency grid edge)
    for w in np.geomspace(0.1, 10.0, 8):
        p = ReducedParams(omega_tilde=float(w), Omega_tilde=0.002, z=1.0)
        o2, o3, o4 = aggregate(p).per_order
        assert abs(o3.a1) + abs(o4.a1) < 0.01 * abs(o2.a1)
        assert abs(o3.a4) + abs(o4.a4) < 0.01 * abs(o2.a4)
