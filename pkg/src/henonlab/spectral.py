"""Negative spectrum of the singular linearized operator at a radial profile.

The eigenproblem, in the t-variable and weighted divergence form, is

    -(t^(M-1) psi')' - p |v|^(p-1) t^(M-1) psi = lam t^(M-3) psi,   psi(1) = 0,

with v an m-nodal profile of the transformed equation.  The mass weight
t^(M-3) is integrable-but-singular as M -> 2, and the Hardy inequality
(quotient floor ((M-2)/2)^2 when the potential vanishes) makes the problem
well posed.  An m-nodal profile contributes exactly m negative eigenvalues
lam_1 < ... < lam_m < 0; the large-weight spectrum of the original operator
is recovered through lam_i = (2/(alpha+2))^2 * Lam_hat_i.

Discretization: piecewise-linear finite elements on a mesh graded
geometrically toward 0 (truncated at t_min with a natural condition there —
eigenfunctions vanish like t^gamma with gamma > 0, so truncation error is
negligible and is covered by a regression test).  The power weights t^(M-1)
and t^(M-3) are integrated in closed form per cell; the potential is sampled
at cell midpoints.  Eigenvalues are isolated by inertia (Sturm-type pivot
count) bisection on the shifted tridiagonal pencil and eigenvectors refined
by inverse iteration.
"""

from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.linalg import solve_banded

from .errors import InvalidArgsError, MeshTooCoarseError, NotConvergedError
from .params import ProblemParams
from .quadrature import power_integral
from .radial import RadialProfile, SolverConfig, solve_transformed


@dataclass(frozen=True)
class GradedMesh:
    """Strictly increasing nodes on [t_min, 1], geometric near 0, uniform bulk."""

    nodes: np.ndarray
    t_min: float
    grading: float

    @property
    def n(self) -> int:
        return len(self.nodes)

    @classmethod
    def build(cls, t_min: float = 1e-8, n: int = 8000, grading: float = 1.05, knots=()):
        """Geometric ladder from t_min by ``grading`` until the uniform bulk
        width 1/n takes over; ``knots`` (profile zeros) become mesh nodes."""
        if t_min <= 0.0 or t_min >= 1.0:
            raise InvalidArgsError("t_min must lie in (0, 1)")
        h_max = 1.0 / n
        ladder = [t_min]
        while ladder[-1] * (grading - 1.0) < h_max and ladder[-1] * grading < 1.0:
            ladder.append(ladder[-1] * grading)
        n_uniform = max(1, int(np.ceil((1.0 - ladder[-1]) / h_max)))
        bulk = np.linspace(ladder[-1], 1.0, n_uniform + 1)[1:]
        nodes = np.concatenate([ladder, bulk])
        for k in knots:
            if t_min < k < 1.0:
                nodes = np.append(nodes, k)
        nodes = np.unique(nodes)
        nodes = nodes[np.concatenate([[True], np.diff(nodes) > 1e-13])]
        nodes[-1] = 1.0
        return cls(nodes=nodes, t_min=t_min, grading=grading)

    def refined(self) -> "GradedMesh":
        """Midpoint refinement; keeps P1 spaces nested so the discrete
        min-max can only lower eigenvalues."""
        mids = 0.5 * (self.nodes[:-1] + self.nodes[1:])
        return GradedMesh(
            nodes=np.sort(np.concatenate([self.nodes, mids])),
            t_min=self.t_min,
            grading=self.grading,
        )


@dataclass
class EigenPencil:
    """Symmetric tridiagonal pencil (A, B): stiffness-minus-potential vs
    singular mass.  Unknowns are the mesh nodes with t = 1 pinned to zero and
    the value at t_min free (natural condition)."""

    diag_a: np.ndarray
    off_a: np.ndarray
    diag_b: np.ndarray
    off_b: np.ndarray
    mesh: GradedMesh
    M: float
    potential_sup: float

    @property
    def dof(self) -> int:
        return len(self.diag_a)


@dataclass
class EigenResult:
    """Negative pencil eigenvalues with B-normalized eigenfunction samples.

    Eigenfunctions are sampled on ``mesh.nodes`` (boundary zero appended),
    normalized to unit singular mass int psi^2 t^(M-3) dt = 1 and signed
    positive next to t = 1.  ``found`` may fall short of ``requested`` when
    the pencil has fewer negative eigenvalues; callers must check.
    """

    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray  # shape (found, len(mesh.nodes))
    M: float
    dof: int
    requested: int
    found: int
    mesh: GradedMesh


@dataclass
class SingularSpectrum:
    """Negative eigenvalues of the weighted problem at one alpha, in both
    normalizations: Lambda_hat (original singular pencil) and
    lambda_small = (2/(alpha+2))^2 Lambda_hat (transformed pencil)."""

    lambda_hat: np.ndarray
    lambda_small: np.ndarray
    alpha: float
    result: EigenResult


@dataclass
class MuCurve:
    """Eigenvalue branches mu_i(M) of the transformed pencil along M.

    ``mu`` has shape (m, len(M_values)).  ``mu_prime_2`` is the one-sided
    second-order finite difference of mu_i at M = 2 from the fixed triple
    {2, 2+h, 2+2h}; ``c`` combines it with the limit eigenvalues into the
    linear growth coefficient (N-2) mu_i'(2)/2 + lambda_i.
    """

    M_values: np.ndarray
    mu: np.ndarray
    h: float
    mu_prime_2: np.ndarray
    lambda_limit: np.ndarray
    c: np.ndarray


def _cell_matrices(a, b, s):
    """Exact integrals of hat-function products against t^s on cells [a, b].

    Returns (LL, LR, RR) with e.g. LL = int (b-t)^2/h^2 t^s dt; closed-form
    power integrals keep the singular weight exact on every cell.
    """
    h = b - a
    i0 = power_integral(a, b, s)
    i1 = power_integral(a, b, s + 1.0)
    i2 = power_integral(a, b, s + 2.0)
    ll = (b * b * i0 - 2.0 * b * i1 + i2) / h**2
    lr = (-a * b * i0 + (a + b) * i1 - i2) / h**2
    rr = (a * a * i0 - 2.0 * a * i1 + i2) / h**2
    return ll, lr, rr


def assemble_pencil_potential(mesh: GradedMesh, M: float, potential_fn) -> EigenPencil:
    """Assemble the pencil for an arbitrary potential q(t) >= 0 sampled at
    cell midpoints (q multiplies the t^(M-1) weight)."""
    t = mesh.nodes
    a, b = t[:-1], t[1:]
    h = b - a
    stiff = power_integral(a, b, M - 1.0) / h**2
    q = np.asarray(potential_fn(0.5 * (a + b)), dtype=float)
    pll, plr, prr = _cell_matrices(a, b, M - 1.0)
    bll, blr, brr = _cell_matrices(a, b, M - 3.0)

    n = len(t)
    diag_a = np.zeros(n)
    off_a = np.zeros(n - 1)
    diag_b = np.zeros(n)
    off_b = np.zeros(n - 1)
    diag_a[:-1] += stiff - q * pll
    diag_a[1:] += stiff - q * prr
    off_a[:] = -stiff - q * plr
    diag_b[:-1] += bll
    diag_b[1:] += brr
    off_b[:] = blr
    # Dirichlet at t = 1: drop the last node; natural condition at t_min
    return EigenPencil(
        diag_a=diag_a[:-1],
        off_a=off_a[:-1],
        diag_b=diag_b[:-1],
        off_b=off_b[:-1],
        mesh=mesh,
        M=M,
        potential_sup=float(np.max(q, initial=0.0)),
    )


def assemble_pencil(profile: RadialProfile, M: float, p: float, mesh: GradedMesh) -> EigenPencil:
    """Pencil of the linearization at a t-profile: potential p |v|^(p-1).

    Requires at least 8 mesh cells inside every nodal set of the profile.
    """
    if profile.variable != "t":
        raise InvalidArgsError("assemble_pencil expects a t-variable profile")
    edges = np.concatenate([[0.0], profile.zeros])
    counts = np.histogram(0.5 * (mesh.nodes[:-1] + mesh.nodes[1:]), bins=edges)[0]
    if np.any(counts < 8):
        raise MeshTooCoarseError(
            f"mesh has a nodal set with fewer than 8 cells (counts={counts.tolist()})"
        )
    return assemble_pencil_potential(
        mesh, M, lambda t: p * np.abs(profile.value_fn(t)) ** (p - 1.0)
    )


@njit("int64(float64[:], float64[:], float64[:], float64[:], float64)", cache=True)
def _inertia(diag_a, off_a, diag_b, off_b, sigma):  # pragma: no cover - jitted
    n = diag_a.shape[0]
    count = 0
    d = diag_a[0] - sigma * diag_b[0]
    if d < 0.0:
        count = 1
    for i in range(1, n):
        e = off_a[i - 1] - sigma * off_b[i - 1]
        if d == 0.0:
            d = 1e-300
        d = (diag_a[i] - sigma * diag_b[i]) - e * e / d
        if d < 0.0:
            count += 1
    return count


def inertia_count(pencil: EigenPencil, sigma: float) -> int:
    """Number of pencil eigenvalues strictly below ``sigma`` (Sturm pivots)."""
    return int(_inertia(pencil.diag_a, pencil.off_a, pencil.diag_b, pencil.off_b, float(sigma)))


def _bisect_kth(pencil, k, lo, hi):
    """Isolate the k-th smallest eigenvalue in (lo, hi];
    invariant inertia(lo) < k <= inertia(hi)."""
    width_goal = lambda x, y: 1e-10 * (1.0 + abs(x) + abs(y))
    iterations = 0
    while hi - lo > width_goal(lo, hi):
        if iterations > 300:
            raise NotConvergedError(
                f"bisection stalled at [{lo}, {hi}] for eigenvalue #{k}"
            )
        mid = 0.5 * (lo + hi)
        if inertia_count(pencil, mid) >= k:
            hi = mid
        else:
            lo = mid
        iterations += 1
    return 0.5 * (lo + hi), hi


def _tridiag_matvec(diag, off, x):
    y = diag * x
    y[:-1] += off * x[1:]
    y[1:] += off * x[:-1]
    return y


def _eigenvector(pencil, lam, index):
    """Inverse iteration at a shift just above lam (bracket width ~1e-10)."""
    n = pencil.dof
    shift = lam + 1e-9 * (1.0 + abs(lam))
    ab = np.zeros((3, n))
    ab[0, 1:] = pencil.off_a - shift * pencil.off_b
    ab[1, :] = pencil.diag_a - shift * pencil.diag_b
    ab[2, :-1] = pencil.off_a - shift * pencil.off_b
    x = np.sin(index * np.pi * pencil.mesh.nodes[:-1])
    x[0] = max(x[0], 1e-3)
    for _ in range(3):
        x = solve_banded((1, 1), ab, _tridiag_matvec(pencil.diag_b, pencil.off_b, x))
        x /= np.sqrt(abs(x @ _tridiag_matvec(pencil.diag_b, pencil.off_b, x)))
    if x[-1] < 0.0:  # sign convention: positive next to t = 1
        x = -x
    return x


def negative_eigenvalues(pencil: EigenPencil, count: int) -> EigenResult:
    """The ``count`` smallest negative pencil eigenvalues with eigenvectors.

    Bisection brackets start at [-4 * sup potential - 1, 0): after the Hardy
    floor the potential bounds the quotient from below, so the bracket is
    guaranteed (and verified, extending downward defensively if ever needed).
    Returns fewer eigenvalues if fewer exist; ``found`` records how many.
    """
    if count < 1:
        raise InvalidArgsError("count must be >= 1")
    lo = -4.0 * pencil.potential_sup - 1.0
    guard = 0
    while inertia_count(pencil, lo) > 0:
        lo *= 2.0
        guard += 1
        if guard > 60:
            raise NotConvergedError("could not bracket the spectrum from below")
    n_neg = inertia_count(pencil, 0.0)
    found = min(count, n_neg)
    eigenvalues = np.empty(found)
    vectors = np.zeros((found, pencil.mesh.n))
    lo_i = lo
    for i in range(1, found + 1):
        lam, hi_bracket = _bisect_kth(pencil, i, lo_i, 0.0)
        eigenvalues[i - 1] = lam
        vectors[i - 1, :-1] = _eigenvector(pencil, lam, i)
        lo_i = hi_bracket  # eigenvalues are isolated left to right
    return EigenResult(
        eigenvalues=eigenvalues,
        eigenfunctions=vectors,
        M=pencil.M,
        dof=pencil.dof,
        requested=count,
        found=found,
        mesh=pencil.mesh,
    )


def smallest_eigenvalue(pencil: EigenPencil, hi: float | None = None) -> float:
    """Smallest pencil eigenvalue (used for quotient-floor checks)."""
    lo = -4.0 * pencil.potential_sup - 1.0
    while inertia_count(pencil, lo) > 0:
        lo *= 2.0
    if hi is None:
        hi = abs(lo) + 10.0
        while inertia_count(pencil, hi) < 1:
            hi *= 2.0
    lam, _ = _bisect_kth(pencil, 1, lo, hi)
    return lam


def sign_changes(values, scale_floor: float = 1e-8):
    """Interior sign changes of a sampled function (Sturm oscillation checks)."""
    v = np.asarray(values)
    v = v[np.abs(v) > scale_floor * np.max(np.abs(v))]
    return int(np.sum(np.diff(np.sign(v)) != 0))


def singular_spectrum_henon(params: ProblemParams, profile_t: RadialProfile,
                            mesh: GradedMesh) -> SingularSpectrum:
    """Both normalizations of the negative spectrum at one alpha.

    Solves the pencil at M = M_alpha for lambda_small and scales by
    ((alpha+2)/2)^2 to recover Lambda_hat.
    """
    pencil = assemble_pencil(profile_t, params.M_alpha, params.p, mesh)
    result = negative_eigenvalues(pencil, params.m)
    lam = result.eigenvalues
    lam_hat = ((params.alpha + 2.0) / 2.0) ** 2 * lam
    return SingularSpectrum(
        lambda_hat=lam_hat, lambda_small=lam, alpha=params.alpha, result=result
    )


def eigenvalue_curve_mu(p: float, m: int, M_values, mesh: GradedMesh, N: int,
                        config: SolverConfig = SolverConfig(), h: float = 1e-3) -> MuCurve:
    """Branches mu_i(M) of the pencil at the m-nodal profile of each M.

    All M values share ``mesh`` so discretization bias cancels in
    differences.  The derivative mu_i'(2) uses the one-sided second-order
    stencil on the triple {2, 2+h, 2+2h} (always computed, merged into the
    requested M list), and c_i = (N-2) mu_i'(2)/2 + mu_i(2).
    """
    base = np.array([2.0, 2.0 + h, 2.0 + 2.0 * h])
    M_all = np.unique(np.concatenate([np.asarray(M_values, dtype=float), base]))
    mu = np.empty((m, len(M_all)))
    for j, M in enumerate(M_all):
        v = solve_transformed(M, p, m, config)
        pencil = assemble_pencil(v, M, p, mesh)
        res = negative_eigenvalues(pencil, m)
        if res.found < m:
            raise NotConvergedError(f"expected {m} negative eigenvalues at M={M}, found {res.found}")
        mu[:, j] = res.eigenvalues
    idx = {M: j for j, M in enumerate(M_all)}
    mu0 = mu[:, idx[base[0]]]
    mu1 = mu[:, idx[base[1]]]
    mu2 = mu[:, idx[base[2]]]
    mu_prime_2 = (-3.0 * mu0 + 4.0 * mu1 - mu2) / (2.0 * h)
    c = (N - 2) * mu_prime_2 / 2.0 + mu0
    return MuCurve(M_values=M_all, mu=mu, h=h, mu_prime_2=mu_prime_2, lambda_limit=mu0, c=c)
