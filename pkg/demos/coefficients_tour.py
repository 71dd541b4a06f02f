"""A short tour of the master-equation coefficients.

Evaluates the per-order coefficients at one parameter point, checks the
compact closed forms, and shows how the totals approach the analytic
high- and low-temperature limits.
"""

from embath import ReducedParams, aggregate, delta_compact, lambda_compact
from embath.coeffs import high_T_limits, low_T_limits

p = ReducedParams(omega_tilde=1.0, Omega_tilde=0.1, z=1.0)
mc = aggregate(p)

print(f"point: omega0/Omega = {p.omega_tilde}, Omega*tau_e = {p.Omega_tilde}, "
      f"beta*Omega = {p.z}")
print()
print("per-order coefficients (units of Omega):")
for o in mc.per_order:
    print(f"  order {o.order}: A1 = {o.a1:+.6e}  A4 = {o.a4:+.6e}  "
          f"Dxx = {o.d_xx:+.6e}  Dxp = {o.d_xp:+.6e}")
print()
print(f"frequency shift  Delta  = {mc.delta:+.12e}")
print(f"decay constant   lambda = {mc.lambda_:+.12e}")
print(f"compact-form residuals: {abs(mc.delta - delta_compact(p)):.1e} "
      f"(Delta), {abs(mc.lambda_ - lambda_compact(p)):.1e} (lambda)")
print()

for z, fn, tag in ((1e-3, high_T_limits, "high-T"), (1e3, low_T_limits, "low-T")):
    q = ReducedParams(omega_tilde=2.0, Omega_tilde=0.1, z=z)
    lim = fn(q)
    full = {o.order: (o.d_xx, o.d_xp) for o in aggregate(q).per_order}
    rel = max(abs(full[n][i] - lim[n][i]) / abs(lim[n][i])
              for n in (2, 3, 4) for i in range(2))
    print(f"{tag} limit at z = {z:g}: worst relative gap to the asymptotic "
          f"formulas = {rel:.2e}")
