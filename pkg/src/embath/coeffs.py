"""Closed-form master-equation coefficients through fourth order.

Everything here is a function of the reduced parameters only.  Internally we
work in units hbar = m = Omega = 1, so

    omega0   = w  (omega_tilde)
    tau_e    = W  (Omega_tilde)
    beta     = z
    gamma    = w^2 W     (decay rate; gamma/omega0 = w W, gamma/Omega = w^2 W)
    dm       = W         (mass-renormalization ratio)
    f        = 1 / (1 + w^2)

The per-order dimensionless coefficients (a1..a4) multiply, respectively, the
i[p^2, rho], [p,[p, rho]], [p,[x, rho]] and drift/anticommutator structures
of the master equation; the aggregates are

    Delta = sum a1,  lambda = sum a4,  Dxx = sum (a2 - a4),  Dxp = sum a3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OrderError, ValidationError
from .model import ReducedParams, cutoff_factor, thermal_occupation
from .special import csch_sq, polygamma


@dataclass(frozen=True)
class OrderCoeffs:
    """Dimensionless coefficients A1..A4 at one perturbative order."""

    order: int
    a1: float
    a2: float
    a3: float
    a4: float

    @property
    def d_xx(self) -> float:
        return self.a2 - self.a4

    @property
    def d_xp(self) -> float:
        return self.a3


@dataclass(frozen=True)
class MasterCoeffs:
    """Aggregated drift and diffusion coefficients with per-order breakdown."""

    delta: float
    lambda_: float
    d_xx: float
    d_xp: float
    per_order: tuple[OrderCoeffs, OrderCoeffs, OrderCoeffs]


@dataclass(frozen=True)
class TIntegralSet:
    """Closed-form T-integral values at one point (units hbar = m = Omega = 1).

    t1/t2 are the per-order sums T1^(n), T2^(n); the raw parts are kept for
    direct comparison with the quadrature oracle.
    """

    order: int
    t1: complex
    t2: complex
    parts: dict[str, complex]


def _coth(x: float) -> float:
    if x > 350.0:
        return 1.0
    return 1.0 / math.tanh(x)


def _check(p: ReducedParams) -> None:
    if not isinstance(p, ReducedParams):
        raise ValidationError(f"expected ReducedParams, got {type(p)!r}")


def bath_integral_I(p: ReducedParams) -> float:
    """The frequency integral I entering A3 at every order:

        I = -1/z + (2/pi) (Re psi0(1 - i z w / pi) - psi0(z / pi))
    """
    _check(p)
    w, z = p.omega_tilde, p.z
    re_psi = polygamma(0, complex(1.0, -z * w / math.pi)).real
    return -1.0 / z + (2.0 / math.pi) * (re_psi - polygamma(0, z / math.pi))


def _psi0_combo(p: ReducedParams) -> float:
    """Psi0 = psi0(z/pi) - Re psi0(1 - i z w / pi) = -(pi/2) (I + 1/z)."""
    w, z = p.omega_tilde, p.z
    re_psi = polygamma(0, complex(1.0, -z * w / math.pi)).real
    return polygamma(0, z / math.pi) - re_psi


def _im_psi1(p: ReducedParams) -> float:
    """Im psi1(1 - i z w / pi)."""
    return polygamma(1, complex(1.0, -p.z * p.omega_tilde / math.pi)).imag


def second_order(p: ReducedParams) -> OrderCoeffs:
    _check(p)
    w, W = p.omega_tilde, p.Omega_tilde
    f = cutoff_factor(w)
    g = w * W  # gamma / omega0
    n = thermal_occupation(p.beta_omega0)
    return OrderCoeffs(
        order=2,
        a1=-f * W,
        a2=2.0 * f * g * n,
        a3=f * g * bath_integral_I(p),
        a4=-f * g,
    )


def third_order(p: ReducedParams) -> OrderCoeffs:
    _check(p)
    w, W = p.omega_tilde, p.Omega_tilde
    f = cutoff_factor(w)
    g = w * W
    dm = W
    bw = p.beta_omega0
    coth = _coth(bw)
    I = bath_integral_I(p)
    psi0c = _psi0_combo(p)

    a1 = -f * f * (g * g - dm * dm)
    a2 = (
        -f * f * g * (dm * (1.0 + 1.0 / f) * coth - g * I)
        + f * g * dm * (2.0 * f - 1.0 / bw)
    )
    a3 = -f * f * g * (g * coth - dm * (-I + (2.0 / math.pi) * psi0c / f))
    a4 = 2.0 * f * f * g * dm
    return OrderCoeffs(order=3, a1=a1, a2=a2, a3=a3, a4=a4)


def fourth_order(p: ReducedParams) -> OrderCoeffs:
    _check(p)
    w, W, z = p.omega_tilde, p.Omega_tilde, p.z
    f = cutoff_factor(w)
    g = w * W  # gamma / omega0
    G = w * w * W  # gamma / Omega
    gamma = G  # Omega = 1
    dm = W
    bw = p.beta_omega0
    coth = _coth(bw)
    I = bath_integral_I(p)
    im_psi1 = _im_psi1(p)
    psi1_z = polygamma(1, z / math.pi)
    psi2_z = polygamma(2, z / math.pi)
    csch2 = csch_sq(bw)
    pi2 = math.pi * math.pi

    a1 = -(f**3) * (g * g * (1.0 - 3.0 * dm) - G * G + dm**3)

    a2 = -(f**3) * g * (
        (-2.5 * G + dm * (0.5 + G - 3.0 * dm)) * coth
        + g * I
        + 2.0 * G
        + dm * (3.0 * dm - G)
    ) - f * f * gamma * z * (g * im_psi1 / pi2 - 0.5 * dm * csch2)

    a3 = -(f**3) * g * (
        0.5 * g * (w * w - 1.0) * coth
        - I * (3.0 * G + dm * (3.0 * dm - G))
        + (dm * (3.0 * dm + G) / f + G * (1.0 + w * w)) / z
    ) - f * f * gamma * z * g * (
        0.5 * csch2
        - (2.0 / pi2) * (1.0 + 2.0 * dm * dm / gamma) * psi1_z
        + (dm * w / (gamma * pi2))
        * (im_psi1 + (z / (math.pi * f)) * (dm / w) * psi2_z)
    )

    a4 = -(f**3) * g * (2.0 * G + dm * (3.0 * dm - G))
    return OrderCoeffs(order=4, a1=a1, a2=a2, a3=a3, a4=a4)


def aggregate(p: ReducedParams, max_order: int = 4) -> MasterCoeffs:
    """Sum orders 2..max_order into Delta, lambda, Dxx, Dxp."""
    if max_order not in (2, 3, 4):
        raise OrderError(f"max_order must be 2, 3 or 4, got {max_order!r}")
    all_orders = (second_order(p), third_order(p), fourth_order(p))
    orders = all_orders[: max_order - 1]
    return MasterCoeffs(
        delta=sum(o.a1 for o in orders),
        lambda_=sum(o.a4 for o in orders),
        d_xx=sum(o.a2 - o.a4 for o in orders),
        d_xp=sum(o.a3 for o in orders),
        per_order=orders,
    )


def delta_compact(p: ReducedParams) -> float:
    """Nested compact form of the mass renormalization Delta."""
    _check(p)
    w, W = p.omega_tilde, p.Omega_tilde
    f = cutoff_factor(w)
    w2 = w * w
    return -W * f * (
        1.0 + W * f * ((w2 - 1.0) + f * (W * (1.0 - 3.0 * w2) + w2 * (1.0 - w2)))
    )


def lambda_compact(p: ReducedParams) -> float:
    """Nested compact form of the decay constant lambda."""
    _check(p)
    w, W = p.omega_tilde, p.Omega_tilde
    f = cutoff_factor(w)
    w2 = w * w
    return -f * w * W * (1.0 + f * W * (-2.0 + f * (W * (3.0 - w2) + 2.0 * w2)))


def high_T_limits(p: ReducedParams) -> dict[int, tuple[float, float]]:
    """Leading z << 1 behavior of (Dxx, Dxp) per order; each is ~ 1/z."""
    _check(p)
    w, W, z = p.omega_tilde, p.Omega_tilde, p.z
    f = cutoff_factor(w)
    w2 = w * w
    dxx2 = f * W / z
    dxx3 = -f * f * W * W * (3.0 + w2) / z
    dxx4 = f**3 * W * W * (3.0 * W + w2 * (2.0 - W)) / z
    dxp2 = f * w * W / z
    dxp3 = -2.0 * f * f * w * W * W * (2.0 + w2) / z
    dxp4 = f**3 * w * W * W * (6.0 * W + w2 * (3.0 + w2) * (1.0 + W)) / z
    return {2: (dxx2, dxp2), 3: (dxx3, dxp3), 4: (dxx4, dxp4)}


def low_T_limits(p: ReducedParams) -> dict[int, tuple[float, float]]:
    """z >> 1 (T -> 0) limits of (Dxx, Dxp) per order."""
    _check(p)
    w, W = p.omega_tilde, p.Omega_tilde
    if not w > 0.0:
        raise ValidationError("omega_tilde must be > 0 for the low-T logarithms")
    f = cutoff_factor(w)
    w2 = w * w
    lg = math.log(w)
    pi = math.pi

    dxx2 = f * w * W
    dxx3 = -f * f * w * W * W * (2.0 + w2 - (2.0 / pi) * w * lg)
    dxx4 = -(f**3) * w * W * W * (
        0.5 - 3.0 * W + (W - 2.5) * w2 + (w / pi) * (1.0 + w2 + 2.0 * lg)
    )
    dxp2 = (2.0 / pi) * f * w * W * lg
    dxp3 = -f * f * w * W * W * (w + (2.0 / pi) * (2.0 + w2) * lg)
    dxp4 = (f**3) * w * W * W / pi * (
        5.0 * W
        - 1.0
        + w2 * w2 * (2.0 + W)
        + (1.0 + 6.0 * W) * w2
        + 2.0 * (3.0 * w2 + W * (3.0 - w2)) * lg
        + 0.5 * pi * w * (1.0 - w2)
    )
    return {2: (dxx2, dxp2), 3: (dxx3, dxp3), 4: (dxx4, dxp4)}


# ---------------------------------------------------------------------------
# Closed-form T-integrals (hbar = m = Omega = 1), for oracle comparison.
# ---------------------------------------------------------------------------


def t2_closed(p: ReducedParams) -> TIntegralSet:
    w, W = p.omega_tilde, p.Omega_tilde
    f = cutoff_factor(w)
    gamma = w * w * W
    coth = _coth(p.beta_omega0)
    I = bath_integral_I(p)
    t21 = complex(f * gamma * coth, -f * w * W)
    t22 = f * gamma * complex(I, -1.0)
    return TIntegralSet(order=2, t1=t21, t2=t22, parts={"T21": t21, "T22": t22})


def t3_closed(p: ReducedParams) -> TIntegralSet:
    w, W = p.omega_tilde, p.Omega_tilde
    f = cutoff_factor(w)
    g = w * W
    gamma = w * w * W
    dm = W
    coth = _coth(p.beta_omega0)
    I = bath_integral_I(p)
    psi0c = _psi0_combo(p)

    t31 = complex(
        -gamma * f * f * (dm * coth - g * I),
        -w * f * f * (g * g - dm * dm),
    )
    t32 = complex(
        -gamma * f * f * (g * coth + dm * I),
        2.0 * gamma * dm * f * f,
    )
    t33 = complex(-gamma * f * dm * (1.0 / p.beta_omega0 + coth), 0.0)
    t34 = complex((2.0 / math.pi) * gamma * f * dm * psi0c, 0.0)
    return TIntegralSet(
        order=3,
        t1=t31 + t33,
        t2=t32 + t34,
        parts={"T31": t31, "T32": t32, "T33": t33, "T34": t34},
    )


def t4_closed(p: ReducedParams) -> TIntegralSet:
    w, W, z = p.omega_tilde, p.Omega_tilde, p.z
    f = cutoff_factor(w)
    g = w * W
    gamma = w * w * W
    G = gamma  # gamma / Omega with Omega = 1
    dm = W
    bw = p.beta_omega0
    coth = _coth(bw)
    I = bath_integral_I(p)
    im_psi1 = _im_psi1(p)
    psi1_z = polygamma(1, z / math.pi)
    psi2_z = polygamma(2, z / math.pi)
    csch2 = csch_sq(bw)
    pi2 = math.pi * math.pi
    f3 = f**3

    t41 = complex(
        -gamma * f3 * (0.5 * (dm - 5.0 * G) * coth + g * I)
        - f * f * gamma * z * (gamma * im_psi1 / pi2 - 0.5 * w * dm * csch2),
        -gamma * gamma * f3 * (1.0 / w - w),
    )
    t42 = complex(
        -gamma * gamma * f3 * (0.5 * (w - 1.0 / w) * coth + (1.0 + w * w) / z - 3.0 * I)
        - f * f * gamma * z * (
            gamma * (0.5 * csch2 - (2.0 / pi2) * psi1_z) + w * dm * im_psi1 / pi2
        ),
        -2.0 * f3 * gamma * G,
    )
    t61 = complex(
        -f3 * gamma * dm * ((G - dm) * coth + 2.0 * g * I),
        -f3 * gamma * dm * ((w / gamma) * dm * dm - 3.0 * g),
    )
    t62 = complex(
        -f3 * gamma * dm * ((G - dm) * I - 2.0 * g * coth),
        -f3 * gamma * dm * (3.0 * dm - G),
    )
    t63 = complex(-2.0 * f3 * gamma * dm * (-g * I - dm * coth), 0.0)
    t64 = complex(
        -2.0 * f3 * gamma * dm * (g * coth - dm * I)
        - f * gamma * dm * (
            (f / z) * (3.0 * dm + G)
            + dm * z * ((z / math.pi**3) * psi2_z - (4.0 * f / pi2) * psi1_z)
        ),
        0.0,
    )
    return TIntegralSet(
        order=4,
        t1=t41 + t61 + t63,
        t2=t42 + t62 + t64,
        parts={"T41": t41, "T42": t42, "T61": t61, "T62": t62, "T63": t63, "T64": t64},
    )


def coeffs_from_t(t: TIntegralSet, omega_tilde: float) -> OrderCoeffs:
    """Map T1, T2 to (A1..A4): A1 = Im T1 / w, A2 = (Re T1 + Im T2) / w,
    A3 = Re T2 / w, A4 = Im T2 / w."""
    w = omega_tilde
    return OrderCoeffs(
        order=t.order,
        a1=t.t1.imag / w,
        a2=(t.t1.real + t.t2.imag) / w,
        a3=t.t2.real / w,
        a4=t.t2.imag / w,
    )
