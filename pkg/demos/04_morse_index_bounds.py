"""Morse index counts and their closed-form lower bounds.

Each negative radial eigenvalue Lam_hat_i spawns the shifted family
Lam_hat_i + j(N-2+j) with spherical-harmonic multiplicity N_j; the Morse
index is the multiplicity-weighted count of strictly negative members.  Two
explicit lower bounds follow from the limit eigenvalues.
"""
import henonlab as hl

p, N, m, theta = 3.0, 3, 2, 1.1

# limit eigenvalues feed the bounds
w = hl.solve_lane_emden(p, m)
mesh = hl.GradedMesh.build(n=8000, knots=tuple(w.zeros[:-1]))
lam_limit = hl.negative_eigenvalues(hl.assemble_pencil(w, 2.0, p, mesh), m).eigenvalues
print("limit eigenvalues:", lam_limit)

print("\nmultiplicities N_j in dimension 3 (2j+1):",
      [hl.spherical_multiplicity(3, j) for j in range(6)])

print(f"\nalpha    total index    J-bound     K-bound (theta={theta})")
for alpha in (20.0, 80.0, 320.0):
    params = hl.ProblemParams(p=p, N=N, alpha=alpha, m=m)
    v = hl.solve_transformed(params.M_alpha, p, m)
    v.params = params
    mesh_a = hl.GradedMesh.build(n=8000, knots=tuple(v.zeros[:-1]))
    spec = hl.singular_spectrum_henon(params, v, mesh_a)
    report = hl.morse_index(spec.lambda_hat, N, alpha=alpha)
    J, bound_J = hl.lower_bound_J(alpha, N, lam_limit[-1], m)
    K, bound_K = hl.lower_bound_K(alpha, N, lam_limit[-2], m, theta)
    print(f"{alpha:6.0f}  {report.total_index:12d}  {bound_J:9d}  {bound_K:10d}")

# the index grows quadratically with alpha: each eigenvalue admits degrees
# up to ~ sqrt(-Lam_hat_i) and contributes ~ that many squared directions
