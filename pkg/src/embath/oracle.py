"""Independent numerical evaluation of the bath correlation and T-integrals.

The bath pair correlation for the Drude spectral density decomposes into a
sum of decaying exponentials (the bath-cutoff pole plus the thermal poles of
coth at nu_n = n*pi/beta).  Every semi-infinite time integral of the
correlation against trig factors therefore reduces to a numerically summed
series of elementary rational transforms

    int_0^inf e^(-mu t) cos(w t) dt = mu / (mu^2 + w^2),  etc.

The series are summed term by term (with the cutoff-pole and thermal-pole
contributions grouped so the n*pi = beta*Omega resonance cancels stably) and
closed with an Euler-Maclaurin tail integral.  No digamma/polygamma identity
is used anywhere on this path, which keeps it independent of the closed
forms in :mod:`embath.coeffs`.

Two further evaluation policies exist as cross-checks: direct frequency
quadrature for the pair correlation and direct (truncated, zero-partitioned)
time-domain quadrature for the second-order integrals.

Internal units: hbar = m = Omega = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sps
from scipy.integrate import quad

from .coeffs import OrderCoeffs
from .errors import ConvergenceError, TailBoundError, ValidationError
from .model import ReducedParams

# trig-sum expansions: cos/sin of a sum of 2 or 3 angles as signed products
_COS2 = ((1.0, "c", "c"), (-1.0, "s", "s"))
_SIN2 = ((1.0, "s", "c"), (1.0, "c", "s"))
_COS3 = (
    (1.0, "c", "c", "c"),
    (-1.0, "c", "s", "s"),
    (-1.0, "s", "c", "s"),
    (-1.0, "s", "s", "c"),
)
_SIN3 = (
    (1.0, "s", "c", "c"),
    (1.0, "c", "s", "c"),
    (1.0, "c", "c", "s"),
    (-1.0, "s", "s", "s"),
)


@dataclass(frozen=True)
class QuadratureSpec:
    """Error-control knobs for the oracle evaluations."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    t_max_periods: float = 60.0
    matsubara_terms: int = 0  # 0 -> automatic
    method: str = "matsubara"

    def n_terms(self, z: float) -> int:
        if self.matsubara_terms > 0:
            return self.matsubara_terms
        return max(4000, int(80.0 * z))


@dataclass(frozen=True)
class CorrelationKernel:
    """Bath pair correlation <12>(t) in reduced units."""

    params: ReducedParams
    policy: str = "matsubara"

    @property
    def amplitude(self) -> float:
        # prefactor (hbar m tau_e Omega^2) / 2 in reduced units
        return 0.5 * self.params.Omega_tilde


@dataclass(frozen=True)
class OracleResult:
    """Oracle values with per-quantity error estimates."""

    order: int
    values: dict[str, complex]
    errors: dict[str, float] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Matsubara mode machinery
# ---------------------------------------------------------------------------


def _re_functional(R, z: float, W: float, n_terms: int) -> float:
    """Apply the real part of the correlation as a linear functional.

    For g with Laplace transform R(mu) = int_0^inf e^(-mu t) g(t) dt,
    returns int_0^inf Re<12>(t) g(t) dt.  R must accept numpy arrays.
    """
    R1 = float(np.asarray(R(np.array([1.0])))[0])
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    nu = n * (math.pi / z)
    d = nu * nu - 1.0
    vals = np.asarray(R(nu), dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = (2.0 / z) * (nu * vals - R1) / d
    near = np.abs(d) < 1e-6
    if near.any():
        # resonance nu_n ~ 1: replace by the stable derivative form
        h = 1e-5
        for idx in np.nonzero(near)[0]:
            nun = nu[idx]
            m = 0.5 * (nun + 1.0)
            fp = (
                (m + h) * float(np.asarray(R(np.array([m + h])))[0])
                - (m - h) * float(np.asarray(R(np.array([m - h])))[0])
            ) / (2.0 * h)
            terms[idx] = (2.0 / z) * fp / (nun + 1.0)
    s = float(np.sum(terms))

    def f(nn: float) -> float:
        v = nn * (math.pi / z)
        return (2.0 / z) * (v * float(np.asarray(R(np.array([v])))[0]) - R1) / (v * v - 1.0)

    tail, _ = quad(f, n_terms + 0.5, np.inf, epsabs=1e-16, epsrel=1e-13, limit=200)
    return 0.5 * W * (R1 / z + s + tail)


class _Modes:
    """Per-point context: elementary transforms and the two functionals."""

    def __init__(self, p: ReducedParams, n_terms: int):
        self.w = p.omega_tilde
        self.W = p.Omega_tilde
        self.z = p.z
        self.a = 0.5 * p.Omega_tilde
        self.n_terms = n_terms

    # single-trig transforms at oscillator frequency w
    def E(self, trig: str, mu):
        w = self.w
        if trig == "c":
            return mu / (mu * mu + w * w)
        if trig == "s":
            return w / (mu * mu + w * w)
        if trig == "1":
            return 1.0 / mu
        raise ValueError(trig)

    # transform of a product of two trig factors (both at frequency w)
    def Epair(self, t1: str, t2: str, mu):
        w = self.w
        if t1 == "c" and t2 == "c":
            return 0.5 * (1.0 / mu + mu / (mu * mu + 4.0 * w * w))
        if t1 == "s" and t2 == "s":
            return 0.5 * (1.0 / mu - mu / (mu * mu + 4.0 * w * w))
        # cs or sc
        return w / (mu * mu + 4.0 * w * w)

    def re(self, R) -> float:
        return _re_functional(R, self.z, self.W, self.n_terms)

    def kl(self, R) -> complex:
        """Full correlation functional: Re part series minus i*a*R(1)."""
        R1 = float(np.asarray(R(np.array([1.0])))[0])
        return complex(self.re(R), -self.a * R1)


# ---------------------------------------------------------------------------
# Pair correlation
# ---------------------------------------------------------------------------


def _pair_correlation_matsubara(t: float, k: CorrelationKernel) -> complex:
    p = k.params
    z, W = p.z, p.Omega_tilde
    a = k.amplitude
    at = abs(t)
    if at == 0.0:
        raise ValidationError(
            "the velocity-coupling Drude correlation diverges logarithmically at t = 0"
        )
    im = -a * math.exp(-at)
    # adaptive truncation: resolve exp(-nu t) down to nu*t ~ 45
    n_terms = int(min(5e6, max(4000, 45.0 * z / (math.pi * at))))
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    nu = n * (math.pi / z)
    d = nu * nu - 1.0
    e0 = math.exp(-at)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = (2.0 / z) * (nu * np.exp(-nu * at) - e0) / d
    near = np.abs(d) < 1e-6
    if near.any():
        for idx in np.nonzero(near)[0]:
            nun = nu[idx]
            m = 0.5 * (nun + 1.0)
            terms[idx] = (2.0 / z) * math.exp(-m * at) * (1.0 - m * at) / (nun + 1.0)
    s = float(np.sum(terms))
    nu0 = (n_terms + 0.5) * math.pi / z
    # exponential tail: (2/pi) E1(nu0 t) plus the subdominant 1/(nu(nu^2-1)) rest
    tail = (2.0 / math.pi) * float(sps.exp1(nu0 * at))
    rest, _ = quad(
        lambda v: (2.0 / math.pi) * math.exp(-v * at) * (v / (v * v - 1.0) - 1.0 / v),
        nu0,
        np.inf,
        epsabs=1e-16,
        epsrel=1e-12,
        limit=100,
    )
    # analytic closure of the subtracted e^(-t) piece: -(2/z) e^(-t) sum 1/(nu^2-1)
    log_tail = -(e0 / math.pi) * math.log((nu0 + 1.0) / (nu0 - 1.0))
    re = 0.5 * W * (e0 / z + s + tail + rest + log_tail)
    val = complex(re, im)
    return val if t >= 0.0 else val.conjugate()


def _pair_correlation_frequency(t: float, k: CorrelationKernel) -> complex:
    p = k.params
    z, W = p.z, p.Omega_tilde
    at = abs(t)
    if at == 0.0:
        raise ValidationError("pair correlation diverges at t = 0")
    U = max(200.0, 60.0 / at)

    def j_over(omega):
        return W * omega / (1.0 + omega * omega)

    # Re: split coth = 1 + 2 N; the zero-point part has a slow 1/omega tail
    # handled with a cosine-integral correction, the thermal part decays
    # exponentially on the scale 1/(2z).
    re1, _ = quad(j_over, 0.0, U, weight="cos", wvar=at, limit=2000, epsabs=1e-13)
    si, ci = sps.sici(U * at)
    re1 += -W * ci  # int_U^inf (W/omega) cos(omega t) domega
    re2, _ = quad(
        lambda o: 2.0 * j_over(o) / math.expm1(2.0 * z * o) * math.cos(o * at)
        if o > 0.0
        else W / z,
        0.0,
        max(60.0 / z, 10.0),
        limit=2000,
        epsabs=1e-13,
    )
    im1, _ = quad(j_over, 0.0, U, weight="sin", wvar=at, limit=2000, epsabs=1e-13)
    im1 += W * (0.5 * math.pi - si)  # int_U^inf (W/omega) sin(omega t) domega
    val = complex((re1 + re2) / math.pi, -im1 / math.pi)
    return val if t >= 0.0 else val.conjugate()


def pair_correlation(t: float, k: CorrelationKernel, policy: str | None = None) -> complex:
    """Bath pair correlation <12>(t), reduced units; conj-symmetric in t."""
    pol = policy or k.policy
    if pol == "matsubara":
        return _pair_correlation_matsubara(t, k)
    if pol == "frequency":
        return _pair_correlation_frequency(t, k)
    raise ValidationError(f"unknown pair-correlation policy {pol!r}")


# ---------------------------------------------------------------------------
# T-integral oracles
# ---------------------------------------------------------------------------


def _t2_values(m: _Modes) -> dict[str, complex]:
    w = m.w
    t21 = 2.0 * w * m.kl(lambda mu: m.E("c", mu))
    t22 = 2.0 * w * m.kl(lambda mu: m.E("s", mu))
    return {"T21": t21, "T22": t22}


def _t3_values(m: _Modes) -> dict[str, complex]:
    w, a = m.w, m.a
    ic = -a * m.E("c", 1.0)
    is_ = -a * m.E("s", 1.0)
    klc = m.kl(lambda mu: m.E("c", mu))
    kls = m.kl(lambda mu: m.E("s", mu))
    t31 = 4.0 * w * (ic * klc - is_ * kls)
    t32 = 4.0 * w * (ic * kls + is_ * klc)

    def t3m(trig: str) -> complex:
        # real diamagnetic integrals: the equal-time Im amplitude (-a) times
        # the correlation functional over each time separation
        part_a = m.E(trig, 1.0) * m.re(lambda mu: 1.0 / mu)
        part_b = m.re(lambda mu: m.E(trig, mu))
        return complex(4.0 * w * (-a) * (part_a + part_b), 0.0)

    return {"T31": t31, "T32": t32, "T33": t3m("c"), "T34": t3m("s")}


def _t4_values(m: _Modes) -> dict[str, complex]:
    w, a = m.w, m.a

    def t4x(kind: str) -> complex:
        # kind "1": cos(t13) sin(t24), cos(t14) sin(t23), Im[<14><23>] c(t12) s(t34)
        # kind "2": sin(t13) sin(t24), sin(t14) sin(t23), Im[<14><23>] s(t12) s(t34)
        exp13 = _COS2 if kind == "1" else _SIN2
        exp14 = _COS3 if kind == "1" else _SIN3
        t12_trig = "c" if kind == "1" else "s"

        total = 0.0 + 0.0j
        # term 1: Im<14> <23> trig(t13) sin(t24)
        for s1, x1, y1 in exp13:
            for s2, x2, y2 in _SIN2:
                total += (
                    s1 * s2 * (-a) * m.E(x1, 1.0) * m.E(y2, 1.0)
                    * m.kl(lambda mu, y1=y1, x2=x2: m.Epair(y1, x2, mu + 1.0))
                )
        # term 2: Im<13> <24> trig(t14) sin(t23)
        for sgn, x, y, zz in exp14:
            total += (
                sgn * (-a) * m.E(x, 1.0)
                * m.kl(
                    lambda mu, y=y, zz=zz: m.Epair(y, "s", mu + 1.0) * m.E(zz, mu)
                )
            )
        # term 3: Im[<14><23>] trig(t12) sin(t34)
        total += (
            -a * m.E(t12_trig, 1.0)
            * m.re(lambda mu: 1.0 / (mu + 1.0))
            * m.E("s", 1.0)
        )
        total += -a * m.re(
            lambda mu, x=t12_trig: m.E(x, mu) * (1.0 / (mu + 1.0)) * m.E("s", mu)
        )
        return -4.0 * w * w * total

    def t6_chain(exp3) -> complex:
        # Im<12> Im<23> <34> trig(w t14)
        total = 0.0 + 0.0j
        for sgn, x, y, zz in exp3:
            total += (
                sgn * a * a * m.E(x, 1.0) * m.E(y, 1.0)
                * m.kl(lambda mu, zz=zz: m.E(zz, mu))
            )
        return 8.0 * w * total

    def t6_cross(t12_trig: str) -> complex:
        # Im<12> Im[<24><34>] trig(w t13)
        exp2 = _COS2 if t12_trig == "c" else _SIN2
        total = 0.0 + 0.0j
        for sgn, x, y in exp2:
            total += sgn * a * a * m.E(x, 1.0) * m.E(y, 1.0) * m.re(
                lambda mu: 1.0 / (mu + 1.0)
            )
            total += sgn * a * a * m.E(x, 1.0) * m.re(
                lambda mu, y=y: m.E(y, mu) / (mu + 1.0)
            )
        # Im<23> Im[<14><34>] trig(w t12)
        total += a * a * 0.5 * m.E(t12_trig, 1.0) * m.re(lambda mu: 1.0 / (mu + 1.0))
        total += a * a * m.re(
            lambda mu, x=t12_trig: m.E(x, mu) / ((mu + 1.0) * (mu + 1.0))
        )
        # Im<13> Im[<24><34>] trig(w t12)
        total += a * a * 0.5 * m.E(t12_trig, 1.0) * m.re(lambda mu: 1.0 / (mu + 1.0))
        total += a * a * m.E(t12_trig, 1.0) * m.re(
            lambda mu: 1.0 / ((mu + 1.0) * (mu + 1.0))
        )
        return 8.0 * w * total

    return {
        "T41": t4x("1"),
        "T42": t4x("2"),
        "T61": t6_chain(_COS3),
        "T62": t6_chain(_SIN3),
        "T63": t6_cross("c"),
        "T64": t6_cross("s"),
    }


def _with_errors(p: ReducedParams, q: QuadratureSpec, evaluator) -> OracleResult:
    n = q.n_terms(p.z)
    hi = evaluator(_Modes(p, n))
    lo = evaluator(_Modes(p, max(1000, n // 2)))
    errors = {}
    for key, v in hi.items():
        err = abs(v - lo[key]) + 1e-15 * abs(v)
        scale = max(abs(v), q.abs_tol)
        if err > q.rel_tol * scale * 1e3 and err > 1e-6 * scale:
            raise ConvergenceError(
                f"{key} oracle did not converge: estimate {err:.3e} at {p}"
            )
        errors[key] = err
    order = 2 if "T21" in hi else (3 if "T31" in hi else 4)
    return OracleResult(order=order, values=hi, errors=errors)


def t2_oracle(k: CorrelationKernel, q: QuadratureSpec | None = None) -> OracleResult:
    """Second-order integrals T21, T22 by independent series/quadrature."""
    q = q or QuadratureSpec()
    if q.method == "time_domain":
        return _t2_time_domain(k, q)
    return _with_errors(k.params, q, _t2_values)


def t3_oracle(k: CorrelationKernel, q: QuadratureSpec | None = None) -> OracleResult:
    """Third-order integrals T31, T32 (complex) and T33, T34 (real)."""
    q = q or QuadratureSpec()
    return _with_errors(k.params, q, _t3_values)


def t4_oracle(k: CorrelationKernel, q: QuadratureSpec | None = None) -> OracleResult:
    """Fourth-order integrals T41, T42, T61, T62, T63, T64.

    The printed prefactor of the T64 triple integral is dimensionally
    inconsistent with T63 (an extra omega0*m); the oracle uses the T63
    prefactor, which matches the closed forms.
    """
    q = q or QuadratureSpec()
    return _with_errors(k.params, q, _t4_values)


def coefficient_oracle(p: ReducedParams, q: QuadratureSpec | None = None) -> dict[int, OrderCoeffs]:
    """Per-order A1..A4 obtained from the oracle T values."""
    q = q or QuadratureSpec()
    k = CorrelationKernel(params=p)
    w = p.omega_tilde
    out: dict[int, OrderCoeffs] = {}
    r2 = t2_oracle(k, q).values
    r3 = t3_oracle(k, q).values
    r4 = t4_oracle(k, q).values
    sums = {
        2: (r2["T21"], r2["T22"]),
        3: (r3["T31"] + r3["T33"], r3["T32"] + r3["T34"]),
        4: (r4["T41"] + r4["T61"] + r4["T63"], r4["T42"] + r4["T62"] + r4["T64"]),
    }
    for order, (t1, t2) in sums.items():
        out[order] = OrderCoeffs(
            order=order,
            a1=t1.imag / w,
            a2=(t1.real + t2.imag) / w,
            a3=t2.real / w,
            a4=t2.imag / w,
        )
    return out


# ---------------------------------------------------------------------------
# Direct time-domain quadrature (cross-check policy for order 2)
# ---------------------------------------------------------------------------


def _t2_time_domain(k: CorrelationKernel, q: QuadratureSpec) -> OracleResult:
    p = k.params
    w = p.omega_tilde
    # slowest decay: min(Omega=1, first thermal pole pi/z)
    decay = min(1.0, math.pi / p.z)
    t_max = q.t_max_periods * max(2.0 * math.pi / w, 1.0 / decay)
    # tail bound: |<12>(t)| <~ W (1/z + coth-ish) e^{-decay t}
    amp = p.Omega_tilde * (1.0 + 1.0 / p.z)
    tail_bound = 2.0 * w * amp * math.exp(-decay * t_max) / decay
    if tail_bound > max(q.abs_tol * 1e4, 1e-12):
        raise TailBoundError(
            f"time-domain truncation tail {tail_bound:.2e} too large; "
            "increase t_max_periods"
        )

    def piece(trig, part) -> float:
        def f(t: float) -> float:
            v = _pair_correlation_matsubara(t, k)
            tr = math.cos(w * t) if trig == "c" else math.sin(w * t)
            return (v.real if part == "re" else v.imag) * tr

        # partition at trig zeros for robustness at large w*t
        n_zeros = int(w * t_max / math.pi)
        if n_zeros > 4000:
            raise TailBoundError("too many oscillations for time-domain quadrature")
        pts = [(j + 0.5) * math.pi / w for j in range(n_zeros)]
        pts = [x for x in pts if 0.0 < x < t_max]
        total = 0.0
        edges = [0.0] + pts + [t_max]
        for lo, hi in zip(edges[:-1], edges[1:]):
            val, _ = quad(f, lo, hi, epsabs=1e-13, epsrel=1e-11, limit=400)
            total += val
        return total

    t21 = 2.0 * w * complex(piece("c", "re"), piece("c", "im"))
    t22 = 2.0 * w * complex(piece("s", "re"), piece("s", "im"))
    err = max(1e-9 * abs(t21), 1e-9 * abs(t22), tail_bound)
    return OracleResult(
        order=2,
        values={"T21": t21, "T22": t22},
        errors={"T21": err, "T22": err},
    )
