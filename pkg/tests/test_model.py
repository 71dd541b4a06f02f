"""Parameter bookkeeping and nondimensionalization tests."""

import math

import pytest

from embath.errors import ValidationError
from embath.model import (
    BathSpec,
    OscillatorSpec,
    ReducedParams,
    cutoff_factor,
    reconstruct,
    reduce,
    spectral_density,
    thermal_occupation,
)


def test_reduce_round_trip():
    osc = OscillatorSpec(mass=9.109e-31, omega0=3.5e15)
    bath = BathSpec(cutoff_omega=7.0e15, temperature=300.0, tau_e=6.24e-24)
    p = reduce(osc, bath)
    osc2, bath2 = reconstruct(p, mass=osc.mass, cutoff_omega=bath.cutoff_omega)
    assert abs(osc2.omega0 - osc.omega0) <= 1e-12 * osc.omega0
    assert abs(bath2.tau_e - bath.tau_e) <= 1e-12 * bath.tau_e
    assert abs(bath2.temperature - bath.temperature) <= 1e-12 * bath.temperature
    p2 = reduce(osc2, bath2)
    for name in ("omega_tilde", "Omega_tilde", "z"):
        assert abs(getattr(p2, name) - getattr(p, name)) <= 1e-12 * getattr(p, name)


def test_cutoff_factor_identity():
    for w in (0.0, 0.3, 1.0, 7.0):
        f = cutoff_factor(w)
        assert 0.0 < f <= 1.0
        assert abs(f * (1.0 + w * w) - 1.0) <= 1e-15


def test_thermal_occupation_coth_identity():
    for x in (0.05, 1.0, 4.0):
        n = thermal_occupation(x)
        assert abs(1.0 + 2.0 * n - 1.0 / math.tanh(x)) <= 1e-13 / math.tanh(x)
    assert thermal_occupation(500.0) == 0.0


def test_spectral_density_shape():
    bath = BathSpec(cutoff_omega=2.0, tau_e=0.05, reduced_beta=1.0)
    j1 = spectral_density(1.0, bath, mass=1.0)
    assert j1 == pytest.approx(1.0 * 0.05 * 1.0 * 4.0 / 5.0)
    with pytest.raises(ValidationError):
        spectral_density(-1.0, bath, mass=1.0)


def test_causality_warning():
    with pytest.warns(UserWarning, match="causality"):
        BathSpec(cutoff_omega=2.0, tau_e=0.9, reduced_beta=1.0)


def test_temperature_exclusivity():
    with pytest.raises(ValidationError):
        BathSpec(cutoff_omega=1.0, temperature=10.0, reduced_beta=1.0)
    with pytest.raises(ValidationError):
        BathSpec(cutoff_omega=1.0)
    with pytest.raises(ValidationError):
        OscillatorSpec(mass=-1.0, omega0=1.0)
    with pytest.raises(ValidationError):
        ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=-2.0)


def test_beta_omega0():
    p = ReducedParams(omega_tilde=0.5, Omega_tilde=0.1, z=4.0)
    assert p.beta_omega0 == 2.0
