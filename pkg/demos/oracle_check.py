"""Cross-check the closed-form bath integrals against the numeric oracle.

The oracle evaluates every T integral from the bath correlation function
alone (Matsubara mode sums plus quadrature tails), with no reuse of the
closed-form algebra, so agreement here is a genuine two-path check.
"""

from embath import CorrelationKernel, ReducedParams
from embath.coeffs import t2_closed, t3_closed, t4_closed
from embath.oracle import t2_oracle, t3_oracle, t4_oracle

points = (
    ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=1.0),
    ReducedParams(omega_tilde=0.3, Omega_tilde=0.5, z=0.2),
    ReducedParams(omega_tilde=3.0, Omega_tilde=0.02, z=10.0),
)

for p in points:
    k = CorrelationKernel(params=p)
    print(f"w = {p.omega_tilde:g}, W = {p.Omega_tilde:g}, z = {p.z:g}")
    for closed_fn, oracle_fn in ((t2_closed, t2_oracle),
                                 (t3_closed, t3_oracle),
                                 (t4_closed, t4_oracle)):
        closed = closed_fn(p).parts
        res = oracle_fn(k)
        worst = max(abs(closed[n] - v) / abs(v) for n, v in res.values.items())
        names = ", ".join(sorted(res.values))
        print(f"  {names}: max relative difference {worst:.2e}")
    print()
