"""Gaussian moment dynamics under the coefficient-parameterized master equation.

The adjoint equation closes on the first and second moments of (x, p), so a
Gaussian state staysAussian and the whole evolution reduces to five ODEs.
The five right-hand sides are derived by commutator reduction and certified
numerically against a truncated number-basis superoperator (fock_generator),
which is the binding arbiter for the coefficients of the derived ODEs.

Internal units here: hbar = m = omega0 = 1 (time in units of 1/omega0).
The dissipative coefficients (delta, lambda, d_xx, d_xp) are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm, eigvals, sqrtm

from .coeffs import MasterCoeffs
from .errors import (
    DimensionError,
    NoSteadyStateError,
    StiffnessError,
    TruncationError,
    ValidationError,
)


@dataclass(frozen=True)
class GaussianState:
    """First and second moments of the oscillator (hbar = m = omega0 = 1).

    cov_xp is the symmetrized cross moment <xp + px>/2 - <x><p>.
    """

    mean_x: float
    mean_p: float
    var_xx: float
    var_pp: float
    cov_xp: float

    def __post_init__(self):
        if not self.var_xx > 0.0:
            raise ValidationError(f"var_xx must be > 0, got {self.var_xx!r}")
        if not self.var_pp > 0.0:
            raise ValidationError(f"var_pp must be > 0, got {self.var_pp!r}")

    @property
    def heisenberg_indicator(self) -> float:
        """det sigma = var_xx var_pp - cov_xp^2; >= 1/4 for physical states.

        Tracked as a diagnostic only: the fourth-order equation is not
        guaranteed to preserve it at very low temperature.
        """
        return self.var_xx * self.var_pp - self.cov_xp**2

    def to_vector(self) -> np.ndarray:
        return np.array(
            [self.mean_x, self.mean_p, self.var_xx, self.var_pp, self.cov_xp]
        )

    @staticmethod
    def from_vector(y) -> "GaussianState":
        return GaussianState(
            mean_x=float(y[0]),
            mean_p=float(y[1]),
            var_xx=float(y[2]),
            var_pp=float(y[3]),
            cov_xp=float(y[4]),
        )


@dataclass(frozen=True)
class MomentTrajectory:
    """Moments sampled along an evolution, with the coefficients used."""

    times: np.ndarray
    states: tuple[GaussianState, ...]
    coeffs: MasterCoeffs

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValidationError("times and states must have equal length")
        if np.any(np.diff(self.times) <= 0.0):
            raise ValidationError("times must be strictly increasing")


def _drift_and_inhomogeneity(c: MasterCoeffs):
    """Linear structure of the five moment ODEs.

    Returns (A1, A2, b2): 2x2 first-moment drift, 3x3 second-moment drift on
    (var_xx, var_pp, cov_xp) and the constant diffusion injection.
    """
    d, lam = c.delta, c.lambda_
    a1 = np.array([[lam, 1.0 + d], [-1.0, 0.0]])
    a2 = np.array(
        [
            [2.0 * lam, 0.0, 2.0 * (1.0 + d)],
            [0.0, 0.0, -2.0],
            [-1.0, 1.0 + d, lam],
        ]
    )
    b2 = np.array([c.d_xx, 0.0, -0.5 * c.d_xp])
    return a1, a2, b2


def moment_rhs(s: GaussianState, c: MasterCoeffs) -> np.ndarray:
    """d/dt of (mean_x, mean_p, var_xx, var_pp, cov_xp).

    Derived by reducing the adjoint equation for O in {x, p, x^2, p^2,
    xp + px}; the coefficients are certified by fock_moment_check.
    """
    a1, a2, b2 = _drift_and_inhomogeneity(c)
    m1 = a1 @ np.array([s.mean_x, s.mean_p])
    m2 = a2 @ np.array([s.var_xx, s.var_pp, s.cov_xp]) + b2
    return np.concatenate([m1, m2])


def evolve(
    s0: GaussianState,
    c: MasterCoeffs,
    t_span: tuple[float, float],
    step_ctl: tuple[float, float] = (1e-10, 1e-12),
    t_eval=None,
) -> MomentTrajectory:
    """Integrate the moment ODEs with an adaptive explicit scheme."""
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not (math.isfinite(t0) and math.isfinite(t1) and t1 > t0):
        raise ValidationError(f"invalid t_span {t_span!r}")
    rtol, atol = step_ctl
    if rtol < 1e-12 or atol < 1e-14:
        raise ValidationError("tolerances below supported range")
    a1, a2, b2 = _drift_and_inhomogeneity(c)

    def rhs(_t, y):
        out = np.empty(5)
        out[:2] = a1 @ y[:2]
        out[2:] = a2 @ y[2:] + b2
        return out

    sol = solve_ivp(
        rhs,
        (t0, t1),
        s0.to_vector(),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        t_eval=t_eval,
        dense_output=t_eval is None,
    )
    if not sol.success:
        raise StiffnessError(f"integration failed: {sol.message}")
    steps = np.diff(sol.t)
    if steps.size and np.min(np.abs(steps)) < 1e-12 * (t1 - t0):
        raise StiffnessError("step size collapsed below 1e-12 of the span")
    states = tuple(GaussianState.from_vector(sol.y[:, i]) for i in range(sol.t.size))
    return MomentTrajectory(times=sol.t.copy(), states=states, coeffs=c)


def steady_state(c: MasterCoeffs) -> GaussianState:
    """Fixed point of the moment flow (first moments zero).

    Raises NoSteadyStateError when either drift block fails the Hurwitz
    condition, e.g. the zero-coupling purely oscillatory case.
    """
    a1, a2, b2 = _drift_and_inhomogeneity(c)
    for block in (a1, a2):
        if np.max(eigvals(block).real) >= -1e-14:
            raise NoSteadyStateError(
                "moment drift is not Hurwitz; no stationary Gaussian state"
            )
    v = np.linalg.solve(a2, -b2)
    return GaussianState(
        mean_x=0.0, mean_p=0.0, var_xx=v[0], var_pp=v[1], cov_xp=v[2]
    )


# ---------------------------------------------------------------------------
# Number-basis arbiter
# ---------------------------------------------------------------------------


def _xp_operators(dim: int):
    n = np.arange(1, dim)
    a = np.diag(np.sqrt(n), 1)
    x = (a + a.T) / math.sqrt(2.0)
    p = 1j * (a.T - a) / math.sqrt(2.0)
    return x, p


def fock_generator(c: MasterCoeffs, dim: int) -> np.ndarray:
    """Master-equation generator as a dim^2 x dim^2 matrix on vec(rho).

    Includes the Hamiltonian commutator plus the four dissipative terms
    (each an outer commutator with p, hence trace-preserving by
    construction).  Row-major vec convention: vec(A rho B) =
    (A kron B^T) vec(rho).
    """
    if dim < 8:
        raise DimensionError(f"dim must be >= 8, got {dim}")
    x, p = _xp_operators(dim)
    eye = np.eye(dim)

    def left(op):
        return np.kron(op, eye)

    def right(op):
        return np.kron(eye, op.T)

    def comm(op):
        return left(op) - right(op)

    h = 0.5 * (p @ p + x @ x)
    # anticommutator {x, rho} = x rho + rho x
    anti_x = left(x) + right(x)
    gen = -1j * comm(h)
    gen = gen - 0.5 * (
        1j * c.delta * comm(p @ p)
        + c.d_xx * comm(p) @ comm(p)
        + 1j * c.lambda_ * comm(p) @ anti_x
        + c.d_xp * comm(p) @ comm(x)
    )
    return gen


def _gaussian_density(s: GaussianState, dim: int) -> np.ndarray:
    """Gaussian density matrix with the requested moments, dim levels."""
    sigma = np.array([[s.var_xx, s.cov_xp], [s.cov_xp, s.var_pp]])
    det = float(np.linalg.det(sigma))
    if det < 0.25 * (1.0 - 1e-9):
        raise ValidationError(
            f"covariance violates the Heisenberg bound: det sigma = {det:.6g} < 1/4"
        )
    nu = math.sqrt(max(det, 0.25))
    nbar = nu - 0.5
    eps = 40.0 if nbar < 1e-15 else min(40.0, math.log((nu + 0.5) / (nu - 0.5)))
    smat = np.real(sqrtm(sigma / nu))
    sinv = np.linalg.inv(smat)
    x, p = _xp_operators(dim)
    u = sinv[0, 0] * x + sinv[0, 1] * p
    v = sinv[1, 0] * x + sinv[1, 1] * p
    rho = expm(-0.5 * eps * (u @ u + v @ v))
    rho /= np.trace(rho).real
    if s.mean_x != 0.0 or s.mean_p != 0.0:
        d = expm(1j * (s.mean_p * x - s.mean_x * p))
        rho = d @ rho @ d.conj().T
    # verify the construction before handing it to the arbiter
    occ = np.diag(rho).real
    k = max(1, dim // 10)
    if float(np.sum(occ[-k:])) > 1e-10:
        raise TruncationError(
            f"top {k} of {dim} levels hold {np.sum(occ[-k:]):.2e} population; "
            "increase dim"
        )
    mx = np.trace(rho @ x).real
    mp_ = np.trace(rho @ p).real
    vxx = np.trace(rho @ x @ x).real - mx * mx
    vpp = np.trace(rho @ p @ p).real - mp_ * mp_
    cxp = 0.5 * np.trace(rho @ (x @ p + p @ x)).real - mx * mp_
    built = np.array([mx, mp_, vxx, vpp, cxp])
    want = s.to_vector()
    assert np.max(np.abs(built - want)) < 1e-8, (built, want)
    return rho


@dataclass(frozen=True)
class FockResidualReport:
    """Per-moment |generator-derived rate - moment_rhs| and their max."""

    dim: int
    residuals: np.ndarray
    max_residual: float


def fock_moment_check(s: GaussianState, c: MasterCoeffs, dim: int) -> FockResidualReport:
    """Certify moment_rhs against the number-basis generator at state s."""
    rho = _gaussian_density(s, dim)
    gen = fock_generator(c, dim)
    drho = (gen @ rho.reshape(-1)).reshape(dim, dim)
    x, p = _xp_operators(dim)
    mx = np.trace(rho @ x).real
    mp_ = np.trace(rho @ p).real
    dmx = np.trace(drho @ x).real
    dmp = np.trace(drho @ p).real
    dx2 = np.trace(drho @ x @ x).real
    dp2 = np.trace(drho @ p @ p).real
    dxp = 0.5 * np.trace(drho @ (x @ p + p @ x)).real
    got = np.array(
        [
            dmx,
            dmp,
            dx2 - 2.0 * mx * dmx,
            dp2 - 2.0 * mp_ * dmp,
            dxp - mx * dmp - mp_ * dmx,
        ]
    )
    want = moment_rhs(s, c)
    res = np.abs(got - want)
    return FockResidualReport(dim=dim, residuals=res, max_residual=float(np.max(res)))


def trajectory_rows(traj: MomentTrajectory):
    """Rows for the trajectory CSV contract (see cli)."""
    for t, s in zip(traj.times, traj.states):
        yield (
            float(t),
            s.mean_x,
            s.mean_p,
            s.var_xx,
            s.var_pp,
            s.cov_xp,
            s.heisenberg_indicator,
        )
