"""One sweep, every diagnostic: the full asymptotic picture in one table.

Runs the default doubling sweep alpha = 10..320 for the 2-nodal-set branch,
prints the key per-alpha columns and the named convergence checks, and fits
the quadratic growth of the singular eigenvalues.
"""
import henonlab as hl
from henonlab import sweep as sw

cfg = sw.SweepConfig(p=3.0, N=3, m=2, alphas=sw.geometric_alphas(10.0, 320.0))
report = sw.run_sweep(cfg)

print("alpha      gap_v     gap_dv   zero-rate   plateau    lam_1,a     lam_2,a    index")
for r in report.rows:
    print(f"{r['alpha']:6.0f}  {r['gap_v']:9.5f}  {r['gap_dv']:9.5f}  {r['zero_diag_1']:9.5f}"
          f"  {r['plateau_gap']:9.5f}  {r['lam_1']:10.5f}  {r['lam_2']:10.5f}  {r['morse_total']:8d}")

print("\nlimit eigenvalues:", report.limit["lambda_limit"])
print("linear coefficients from the branch derivative:", report.limit["c"])
for i in (1, 2):
    quad, lin = sw.fit_expansion(report, i)
    print(f"fit of Lam_hat_{i}: quadratic {quad:.6f} (target {report.limit['lambda_limit'][i-1]/4:.6f}), "
          f"linear {lin:.4f} (target {report.limit['c'][i-1]:.4f})")

print("\nnamed checks:")
for res in sw.run_checks(report):
    print(f"  {res.name:18s} {'PASS' if res.passed else 'FAIL'}  {res.summary}")

print("\nmonotonicity onsets:", sw.monotonicity_report(report))
