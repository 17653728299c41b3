"""Negative spectrum of the singular linearized operator.

The pencil -(t^(M-1) psi')' - p|v|^(p-1) t^(M-1) psi = lam t^(M-3) psi is
discretized with P1 elements on a mesh graded into the origin; exact
closed-form cell integrals keep the singular mass weight honest, and inertia
bisection isolates the negative eigenvalues with a count certificate.
"""
import numpy as np
from scipy.special import jn_zeros

import henonlab as hl
from henonlab.spectral import assemble_pencil_potential

p, m = 3.0, 2

# sanity oracle: constant potential j_{1,1}^2 at M=2 has eigenvalue exactly -1
j11 = jn_zeros(1, 1)[0]
mesh = hl.GradedMesh.build(n=4000)
pencil = assemble_pencil_potential(mesh, 2.0, lambda t: np.full_like(t, j11**2))
print("constant-potential oracle eigenvalue:", hl.negative_eigenvalues(pencil, 1).eigenvalues)

# the planar limit profile contributes exactly m negative eigenvalues
w = hl.solve_lane_emden(p, m)
mesh = hl.GradedMesh.build(n=8000, knots=tuple(w.zeros[:-1]))
res = hl.negative_eigenvalues(hl.assemble_pencil(w, 2.0, p, mesh), m)
print(f"\nlimit eigenvalues (m={m}):", res.eigenvalues)
print("interior sign changes per eigenfunction:",
      [int(np.sum(np.diff(np.sign(f[np.abs(f) > 1e-8])) != 0)) for f in res.eigenfunctions])

# along alpha the small eigenvalues approach the limit while the original
# normalization grows like (lambda_i/4) alpha^2
print("\nalpha    lam_1,alpha    lam_2,alpha    Lam_hat_1/alpha^2   Lam_hat_2/alpha^2")
for alpha in (20.0, 80.0, 320.0):
    params = hl.ProblemParams(p=p, N=3, alpha=alpha, m=m)
    v = hl.solve_transformed(params.M_alpha, p, m)
    v.params = params
    mesh_a = hl.GradedMesh.build(n=8000, knots=tuple(v.zeros[:-1]))
    spec = hl.singular_spectrum_henon(params, v, mesh_a)
    print(f"{alpha:6.0f}  {spec.lambda_small[0]:12.6f}  {spec.lambda_small[1]:12.6f}"
          f"  {spec.lambda_hat[0]/alpha**2:16.6f}  {spec.lambda_hat[1]/alpha**2:16.6f}")
print("targets (lambda_i, lambda_i/4):", res.eigenvalues, res.eigenvalues / 4.0)

# eigenvalue branches in the effective dimension M and their slope at 2
curve = hl.eigenvalue_curve_mu(p, m, [2.0, 2.05, 2.1], mesh, N=3)
print("\nbranch values mu_i(M):")
for j, M in enumerate(curve.M_values):
    print(f"  M={M:.4f}: {curve.mu[:, j]}")
print("one-sided derivatives at M=2:", curve.mu_prime_2)
print("linear growth coefficients c_i:", curve.c)
