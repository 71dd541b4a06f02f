"""Command-line interface: point evaluation, verification, sweeps, dynamics.

Exit codes: 0 success, 1 verification mismatch, 2 flag/parameter validation,
3 oracle non-convergence, 4 I/O failure, 5 integrator failure, 6 no steady
state.  Every command accepts --json for machine-readable output carrying a
schema_version field.  CSV output uses 17 significant digits and fixed row
ordering, so identical flags give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import coeffs as C
from .dynamics import GaussianState, evolve, steady_state, trajectory_rows
from .errors import (
    ConvergenceError,
    NoSteadyStateError,
    StiffnessError,
    ValidationError,
)
from .model import HBAR, KB, BETA_CONVENTION, ReducedParams
from .oracle import CorrelationKernel, QuadratureSpec, t2_oracle, t3_oracle, t4_oracle

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_VALIDATION = 2
EXIT_NONCONVERGED = 3
EXIT_IO = 4
EXIT_INTEGRATOR = 5
EXIT_NO_STEADY = 6

_QUANTITIES = ("delta", "lambda", "dxx", "dxp")

# Figure-data presets.  Axis ranges follow the published plots; grids are
# 64x64 (contours) or 256-point lines since the source states ranges but not
# resolutions.  Note on fig3/fig5 temperature labels: the contour-figure
# captions call kBT = 0.01 hbar*Omega "high" and kBT = 100 hbar*Omega "low",
# while the line-figure captions attach the same words to beta*Omega = 0.01
# (high T) and beta*Omega = 100 (low T).  The two conventions conflict; the
# presets follow the beta*Omega values 0.01 / 1 / 100, which reproduce the
# intended high / intermediate / low temperature rows.
_PRESETS = {
    "fig1": dict(w=(0.1, 10.0, 64), W=(1e-3, 0.9, 64), z=(1.0,), q=("delta", "lambda")),
    "fig2": dict(w=(0.1, 10.0, 256), W=(0.5, 0.1, 1e-3), z=(1.0,), q=("delta", "lambda"), lines=True),
    "fig3": dict(w=(0.1, 10.0, 64), W=(1e-3, 0.9, 64), z=(0.01, 1.0, 100.0), q=("dxx",)),
    "fig4": dict(w=(0.1, 10.0, 256), W=(0.5, 0.1, 1e-3), z=(0.01,), q=("dxx", "dxp"), lines=True),
    "fig5": dict(w=(0.1, 10.0, 64), W=(1e-3, 0.9, 64), z=(0.01, 1.0, 100.0), q=("dxp",)),
    "fig6": dict(w=(0.1, 10.0, 256), W=(0.5, 0.1, 1e-3), z=(100.0,), q=("dxx", "dxp"), lines=True),
}


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _add_param_flags(ap: argparse.ArgumentParser):
    ap.add_argument("--omega0-tilde", type=float, required=True,
                    help="oscillator frequency over bath cutoff, omega0/Omega")
    ap.add_argument("--Omega-tau-e", type=float, required=True,
                    help="bath cutoff times electron time, Omega*tau_e")
    ap.add_argument("--beta-Omega", type=float, default=None,
                    help=f"reduced inverse temperature beta*Omega ({BETA_CONVENTION})")
    ap.add_argument("--temperature", type=float, default=None,
                    help="temperature in kelvin (requires --cutoff-omega)")
    ap.add_argument("--cutoff-omega", type=float, default=None,
                    help="bath cutoff Omega in rad/s, for SI temperature input")
    ap.add_argument("--json", action="store_true", help="machine-readable output")


def _reduced_from_args(args) -> ReducedParams | None:
    """Build ReducedParams; returns None for the Omega*tau_e = 0 limit."""
    w = args.omega0_tilde
    W = args.Omega_tau_e
    if args.beta_Omega is not None:
        if args.temperature is not None:
            raise ValidationError("give either --beta-Omega or --temperature, not both")
        z = args.beta_Omega
    elif args.temperature is not None:
        if args.cutoff_omega is None:
            raise ValidationError("--temperature requires --cutoff-omega")
        if not args.temperature > 0.0:
            raise ValidationError("--temperature must be > 0")
        if not args.cutoff_omega > 0.0:
            raise ValidationError("--cutoff-omega must be > 0")
        beta = HBAR / (2.0 * KB * args.temperature)
        z = beta * args.cutoff_omega
    else:
        raise ValidationError("one of --beta-Omega or --temperature is required")
    if W == 0.0:
        if not (w > 0.0 and z > 0.0):
            raise ValidationError("parameters must be positive")
        return None
    if W > 1.0:
        print(
            f"warning: Omega*tau_e = {W:g} exceeds causality bound 1",
            file=sys.stderr,
        )
    return ReducedParams(omega_tilde=w, Omega_tilde=W, z=z)


def _coeff_payload(p: ReducedParams | None, max_order: int) -> dict:
    if p is None:
        per = {
            str(o): {k: 0.0 for k in ("a1", "a2", "a3", "a4", "d_xx", "d_xp")}
            for o in range(2, max_order + 1)
        }
        return {
            "schema_version": SCHEMA_VERSION,
            "per_order": per,
            "delta": 0.0,
            "lambda": 0.0,
            "d_xx": 0.0,
            "d_xp": 0.0,
            "compact_check": {"delta": 0.0, "lambda": 0.0},
        }
    mc = C.aggregate(p, max_order=max_order)
    per = {
        str(o.order): {
            "a1": o.a1, "a2": o.a2, "a3": o.a3, "a4": o.a4,
            "d_xx": o.d_xx, "d_xp": o.d_xp,
        }
        for o in mc.per_order
    }
    payload = {
        "schema_version": SCHEMA_VERSION,
        "omega0_tilde": p.omega_tilde,
        "Omega_tau_e": p.Omega_tilde,
        "beta_Omega": p.z,
        "per_order": per,
        "delta": mc.delta,
        "lambda": mc.lambda_,
        "d_xx": mc.d_xx,
        "d_xp": mc.d_xp,
    }
    if max_order == 4:
        payload["compact_check"] = {
            "delta": mc.delta - C.delta_compact(p),
            "lambda": mc.lambda_ - C.lambda_compact(p),
        }
    return payload


def cmd_coeffs(args) -> int:
    p = _reduced_from_args(args)
    payload = _coeff_payload(p, args.order)
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK
    for order, a in payload["per_order"].items():
        print(
            f"order {order}: A1={_fmt(a['a1'])} A2={_fmt(a['a2'])} "
            f"A3={_fmt(a['a3'])} A4={_fmt(a['a4'])}"
        )
    print(f"delta  = {_fmt(payload['delta'])}")
    print(f"lambda = {_fmt(payload['lambda'])}")
    print(f"d_xx   = {_fmt(payload['d_xx'])}")
    print(f"d_xp   = {_fmt(payload['d_xp'])}")
    if "compact_check" in payload:
        cc = payload["compact_check"]
        print(
            f"compact-form cross-check: delta diff {_fmt(cc['delta'])}, "
            f"lambda diff {_fmt(cc['lambda'])}"
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _reduced_from_args(args)
    if p is None:
        raise ValidationError("verify requires Omega*tau_e > 0")
    tol = args.tol if args.tol is not None else {2: 1e-8, 3: 1e-6, 4: 1e-4}[args.order]
    k = CorrelationKernel(params=p)
    q = QuadratureSpec(rel_tol=tol)
    closed_fn = {2: C.t2_closed, 3: C.t3_closed, 4: C.t4_closed}[args.order]
    oracle_fn = {2: t2_oracle, 3: t3_oracle, 4: t4_oracle}[args.order]
    closed = closed_fn(p).parts
    result = oracle_fn(k, q)
    rows = []
    ok = True
    for name in sorted(result.values):
        cv = closed[name]
        if args.corrupt:
            cv = cv * (1.0 + 1e-3) + (1e-6 if cv == 0 else 0.0)
        ov = result.values[name]
        err = result.errors.get(name, 0.0)
        diff = abs(ov - cv)
        rel = diff / max(abs(cv), 1e-300)
        passed = rel <= tol or diff <= 1e-14
        ok = ok and passed
        rows.append(
            {
                "integral": name,
                "closed": [cv.real, cv.imag],
                "oracle": [ov.real, ov.imag],
                "oracle_error_estimate": err,
                "abs_diff": diff,
                "rel_diff": rel,
                "pass": passed,
            }
        )
    if args.json:
        print(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "order": args.order,
                    "tolerance": tol,
                    "results": rows,
                    "pass": ok,
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        for r in rows:
            status = "pass" if r["pass"] else "FAIL"
            print(
                f"{r['integral']}: closed={r['closed'][0]:+.12e}{r['closed'][1]:+.12e}j "
                f"oracle={r['oracle'][0]:+.12e}{r['oracle'][1]:+.12e}j "
                f"rel={r['rel_diff']:.3e} est={r['oracle_error_estimate']:.1e} {status}"
            )
        print(f"order {args.order} verification: {'pass' if ok else 'FAIL'} (tol {tol:g})")
    return EXIT_OK if ok else EXIT_MISMATCH


def _log_axis(lo: float, hi: float, n: int) -> np.ndarray:
    if not (lo > 0.0 and hi > lo and n >= 1):
        raise ValidationError(f"invalid axis ({lo}, {hi}, {n})")
    return np.geomspace(lo, hi, n)


def _parse_axis(text: str) -> np.ndarray:
    try:
        lo, hi, n = text.split(":")
        return _log_axis(float(lo), float(hi), int(n))
    except ValueError as e:
        raise ValidationError(f"axis must be min:max:count, got {text!r}") from e


def _parse_list(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise ValidationError(f"expected comma-separated reals, got {text!r}") from e
    if not vals:
        raise ValidationError("empty list")
    return vals


def _sweep_header(quantities) -> list[str]:
    cols = ["omega0_tilde", "Omega_tau_e", "beta_Omega"]
    for q in quantities:
        cols += [f"{q}_2", f"{q}_3", f"{q}_4", f"{q}_total", f"{q}_ratio_32", f"{q}_ratio_42"]
    cols.append("error")
    return cols


def _sweep_row(w: float, W: float, z: float, quantities) -> list[str]:
    vals: list[str] = [_fmt(w), _fmt(W), _fmt(z)]
    try:
        p = ReducedParams(omega_tilde=w, Omega_tilde=W, z=z)
        mc = C.aggregate(p)
        picks = {
            "delta": [o.a1 for o in mc.per_order],
            "lambda": [o.a4 for o in mc.per_order],
            "dxx": [o.d_xx for o in mc.per_order],
            "dxp": [o.d_xp for o in mc.per_order],
        }
        for q in quantities:
            v2, v3, v4 = picks[q]
            total = v2 + v3 + v4
            r32 = v3 / v2 if v2 != 0.0 else math.nan
            r42 = v4 / v2 if v2 != 0.0 else math.nan
            vals += [_fmt(v) for v in (v2, v3, v4, total, r32, r42)]
        vals.append("")
    except Exception as e:  # sentinel row with the failure recorded
        vals += ["nan"] * (6 * len(quantities))
        vals.append(f"{type(e).__name__}: {e}")
    return vals


def cmd_sweep(args) -> int:
    if args.preset is not None:
        spec = _PRESETS[args.preset]
        if spec.get("lines"):
            w_axis = _log_axis(*spec["w"])
            W_axis = np.asarray(spec["W"])
        else:
            w_axis = _log_axis(*spec["w"])
            W_axis = _log_axis(*spec["W"])
        z_vals = spec["z"]
        quantities = spec["q"]
    else:
        if args.omega0_tilde_axis is None or args.Omega_tau_e_axis is None:
            raise ValidationError("give --preset or both axis flags")
        w_axis = _parse_axis(args.omega0_tilde_axis)
        W_axis = _parse_axis(args.Omega_tau_e_axis)
        z_vals = _parse_list(args.beta_Omega_list)
        quantities = tuple(q for q in args.quantities.split(",") if q)
        if not quantities:
            raise ValidationError("empty quantity set")
        for q in quantities:
            if q not in _QUANTITIES:
                raise ValidationError(f"unknown quantity {q!r}; choose from {_QUANTITIES}")
    header = _sweep_header(quantities)
    lines = [f"# embath sweep schema_version={SCHEMA_VERSION}", ",".join(header)]
    n_rows = 0
    for w in w_axis:
        for W in W_axis:
            for z in z_vals:
                lines.append(",".join(_sweep_row(float(w), float(W), float(z), quantities)))
                n_rows += 1
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    if args.json:
        print(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "rows": n_rows,
                    "columns": header,
                    "out": args.out,
                }
            )
        )
    else:
        print(f"wrote {n_rows} rows to {args.out}")
    return EXIT_OK


def cmd_dynamics(args) -> int:
    p = _reduced_from_args(args)
    if p is None:
        mc = C.MasterCoeffs(delta=0.0, lambda_=0.0, d_xx=0.0, d_xp=0.0, per_order=())
    else:
        mc = C.aggregate(p, max_order=args.order)
    s0 = GaussianState(
        mean_x=args.mean_x,
        mean_p=args.mean_p,
        var_xx=args.var_xx,
        var_pp=args.var_pp,
        cov_xp=args.cov_xp,
    )
    if args.steady:
        try:
            ss = steady_state(mc)
        except NoSteadyStateError as e:
            if args.json:
                print(json.dumps({"schema_version": SCHEMA_VERSION, "steady": None,
                                  "error": str(e)}))
            else:
                print(f"no steady state: {e}")
            return EXIT_NO_STEADY
        payload = {
            "schema_version": SCHEMA_VERSION,
            "steady": {
                "mean_x": ss.mean_x, "mean_p": ss.mean_p,
                "var_xx": ss.var_xx, "var_pp": ss.var_pp, "cov_xp": ss.cov_xp,
                "heisenberg_indicator": ss.heisenberg_indicator,
            },
        }
        if args.json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            s = payload["steady"]
            for key in ("mean_x", "mean_p", "var_xx", "var_pp", "cov_xp",
                        "heisenberg_indicator"):
                print(f"{key} = {_fmt(s[key])}")
        return EXIT_OK
    if not args.t_final > 0.0:
        raise ValidationError("--t-final must be > 0")
    t_eval = np.linspace(0.0, args.t_final, args.n_samples)
    try:
        traj = evolve(s0, mc, (0.0, args.t_final), (args.rtol, args.atol), t_eval=t_eval)
    except StiffnessError as e:
        print(f"integrator failure: {e}", file=sys.stderr)
        return EXIT_INTEGRATOR

    def energy(s: GaussianState) -> float:
        return 0.5 * (s.var_pp + s.mean_p**2 + s.var_xx + s.mean_x**2)

    drift = abs(energy(traj.states[-1]) - energy(traj.states[0]))
    header = "t,mean_x,mean_p,var_xx,var_pp,cov_xp,heisenberg_indicator"
    lines = [header]
    for row in trajectory_rows(traj):
        lines.append(",".join(_fmt(v) for v in row))
    lines.append(f"# energy_drift={_fmt(drift)}")
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    if args.json:
        print(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "rows": len(traj.times),
                    "energy_drift": drift,
                    "out": args.out,
                }
            )
        )
    else:
        print(f"wrote {len(traj.times)} samples to {args.out} (energy drift {drift:.3e})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="embath",
        description="Master-equation coefficients for a charged oscillator in a "
        "blackbody bath: evaluation, verification, sweeps, dynamics.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_coeffs = sub.add_parser("coeffs", help="per-order coefficients at one point")
    _add_param_flags(p_coeffs)
    p_coeffs.add_argument("--order", type=int, default=4, choices=(2, 3, 4),
                          help="highest perturbative order to include")
    p_coeffs.set_defaults(func=cmd_coeffs)

    p_verify = sub.add_parser("verify", help="closed forms vs independent oracle")
    _add_param_flags(p_verify)
    p_verify.add_argument("--order", type=int, default=2, choices=(2, 3, 4))
    p_verify.add_argument("--tol", type=float, default=None,
                          help="relative tolerance (default per order: 1e-8/1e-6/1e-4)")
    p_verify.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser(
        "sweep",
        help="grid evaluation to CSV",
        description="Evaluate per-order coefficient columns over a parameter grid. "
        "Presets fig1..fig6 reproduce the published figure data. Temperature "
        "presets use beta*Omega in {0.01, 1, 100} for high / intermediate / low "
        "temperature; the contour-figure captions label the same temperatures "
        "through kBT/(hbar Omega), which reads inverted, and the beta*Omega "
        "convention of the line figures is followed here.",
    )
    p_sweep.add_argument("--preset", choices=sorted(_PRESETS), default=None)
    p_sweep.add_argument("--omega0-tilde-axis", default=None, metavar="MIN:MAX:N",
                         help="log-spaced omega0/Omega axis")
    p_sweep.add_argument("--Omega-tau-e-axis", default=None, metavar="MIN:MAX:N",
                         help="log-spaced Omega*tau_e axis")
    p_sweep.add_argument("--beta-Omega-list", default="1.0", metavar="Z1,Z2,...",
                         help="comma-separated beta*Omega values")
    p_sweep.add_argument("--quantities", default="delta,lambda,dxx,dxp",
                         help=f"comma-separated subset of {','.join(_QUANTITIES)}")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--json", action="store_true")
    p_sweep.set_defaults(func=cmd_sweep)

    p_dyn = sub.add_parser("dynamics", help="Gaussian moment trajectory to CSV")
    _add_param_flags(p_dyn)
    p_dyn.add_argument("--order", type=int, default=4, choices=(2, 3, 4))
    p_dyn.add_argument("--mean-x", type=float, default=0.0)
    p_dyn.add_argument("--mean-p", type=float, default=0.0)
    p_dyn.add_argument("--var-xx", type=float, default=0.5)
    p_dyn.add_argument("--var-pp", type=float, default=0.5)
    p_dyn.add_argument("--cov-xp", type=float, default=0.0)
    p_dyn.add_argument("--t-final", type=float, default=10.0,
                       help="final time in units of 1/omega0")
    p_dyn.add_argument("--n-samples", type=int, default=200)
    p_dyn.add_argument("--rtol", type=float, default=1e-10)
    p_dyn.add_argument("--atol", type=float, default=1e-12)
    p_dyn.add_argument("--out", default="trajectory.csv", help="output CSV path")
    p_dyn.add_argument("--steady", action="store_true",
                       help="print the stationary Gaussian state instead of evolving")
    p_dyn.set_defaults(func=cmd_dynamics)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceError as e:
        print(f"oracle did not converge: {e}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except NoSteadyStateError as e:
        print(f"no steady state: {e}", file=sys.stderr)
        return EXIT_NO_STEADY
    except StiffnessError as e:
        print(f"integrator failure: {e}", file=sys.stderr)
        return EXIT_INTEGRATOR
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
