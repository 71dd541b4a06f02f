"""Physical parameter bookkeeping and nondimensionalization.

All coefficient math downstream operates on the three dimensionless knobs

    omega_tilde = omega0 / Omega      (oscillator vs bath cutoff)
    Omega_tilde = Omega * tau_e       (cutoff vs electron time)
    z           = beta * Omega        (inverse temperature vs cutoff)

with the convention beta = hbar / (2 kB T).  This is the unique choice that
makes coth(beta*omega0) coincide with the thermal factor coth(hbar*omega0 /
2 kB T) appearing in the bath pair correlation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import ValidationError

HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J / K
TAU_E = 6.24e-24  # s, 2/3 of the light-crossing time of the classical electron radius

BETA_CONVENTION = "beta = hbar / (2 * kB * T)"


@dataclass(frozen=True)
class OscillatorSpec:
    """Charged oscillator: mass and bare frequency (SI or natural units)."""

    mass: float
    omega0: float

    def __post_init__(self):
        if not self.mass > 0.0:
            raise ValidationError(f"mass must be > 0, got {self.mass!r}")
        if not self.omega0 > 0.0:
            raise ValidationError(f"omega0 must be > 0, got {self.omega0!r}")


@dataclass(frozen=True)
class BathSpec:
    """Drude-cutoff blackbody bath.

    Temperature may be given either in kelvin (``temperature``) or directly
    as the dimensionless ``reduced_beta`` = beta * Omega.  Exactly one of the
    two must be set.
    """

    cutoff_omega: float
    tau_e: float = TAU_E
    temperature: float | None = None
    reduced_beta: float | None = None

    def __post_init__(self):
        if not self.cutoff_omega > 0.0:
            raise ValidationError(f"cutoff_omega must be > 0, got {self.cutoff_omega!r}")
        if not self.tau_e > 0.0:
            raise ValidationError(f"tau_e must be > 0, got {self.tau_e!r}")
        if (self.temperature is None) == (self.reduced_beta is None):
            raise ValidationError("set exactly one of temperature and reduced_beta")
        if self.temperature is not None and not self.temperature > 0.0:
            raise ValidationError(f"temperature must be > 0 K, got {self.temperature!r}")
        if self.reduced_beta is not None and not self.reduced_beta > 0.0:
            raise ValidationError(f"reduced_beta must be > 0, got {self.reduced_beta!r}")
        if self.cutoff_omega * self.tau_e > 1.0:
            warnings.warn(
                "cutoff_omega exceeds the causality bound 1/tau_e "
                f"(Omega*tau_e = {self.cutoff_omega * self.tau_e:.3g} > 1)",
                stacklevel=2,
            )


@dataclass(frozen=True)
class ReducedParams:
    """The three dimensionless knobs that determine every coefficient."""

    omega_tilde: float
    Omega_tilde: float
    z: float

    def __post_init__(self):
        for name in ("omega_tilde", "Omega_tilde", "z"):
            v = getattr(self, name)
            if not v > 0.0 or not math.isfinite(v):
                raise ValidationError(f"{name} must be finite and > 0, got {v!r}")

    @property
    def beta_omega0(self) -> float:
        return self.z * self.omega_tilde


@dataclass(frozen=True)
class CoeffConventions:
    """Records the inverse-temperature convention used throughout."""

    beta_convention: str = field(default=BETA_CONVENTION)


def reduce(osc: OscillatorSpec, bath: BathSpec) -> ReducedParams:
    """Nondimensionalize an (oscillator, bath) pair."""
    omega_tilde = osc.omega0 / bath.cutoff_omega
    Omega_tilde = bath.cutoff_omega * bath.tau_e
    if bath.reduced_beta is not None:
        z = bath.reduced_beta
    else:
        beta = HBAR / (2.0 * KB * bath.temperature)
        z = beta * bath.cutoff_omega
    return ReducedParams(omega_tilde=omega_tilde, Omega_tilde=Omega_tilde, z=z)


def reconstruct(p: ReducedParams, mass: float, cutoff_omega: float) -> tuple[OscillatorSpec, BathSpec]:
    """Rebuild SI specs from reduced parameters (inverse of ``reduce``)."""
    osc = OscillatorSpec(mass=mass, omega0=p.omega_tilde * cutoff_omega)
    beta = p.z / cutoff_omega
    temperature = HBAR / (2.0 * KB * beta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bath = BathSpec(
            cutoff_omega=cutoff_omega,
            tau_e=p.Omega_tilde / cutoff_omega,
            temperature=temperature,
        )
    return osc, bath


def spectral_density(omega: float, bath: BathSpec, mass: float) -> float:
    """Drude-corrected Ohmic spectral density J(omega)."""
    if omega < 0.0:
        raise ValidationError(f"omega must be >= 0, got {omega!r}")
    W = bath.cutoff_omega
    return mass * bath.tau_e * omega * W * W / (omega * omega + W * W)


def cutoff_factor(omega_tilde: float) -> float:
    """Electron structure factor f = 1 / (1 + omega_tilde^2) in (0, 1]."""
    if omega_tilde < 0.0:
        raise ValidationError(f"omega_tilde must be >= 0, got {omega_tilde!r}")
    return 1.0 / (1.0 + omega_tilde * omega_tilde)


def thermal_occupation(beta_omega0: float) -> float:
    """Thermal occupation N = 1 / (exp(2*beta*omega0) - 1).

    Satisfies 1 + 2N = coth(beta*omega0) exactly under the beta convention.
    Returns 0 when the exponent overflows (the T -> 0 limit).
    """
    if not beta_omega0 > 0.0:
        raise ValidationError(f"beta_omega0 must be > 0, got {beta_omega0!r}")
    x = 2.0 * beta_omega0
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)
