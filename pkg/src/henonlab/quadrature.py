"""Composite Gauss-Legendre quadrature for power-weighted radial integrals.

Integrals of the form ``int f(x) x^q dx`` over [0, 1] with q possibly
non-integer (weights t^(M-1), t^(M-3), r^(N-1), r^(alpha+N-1)).  Cells away
from the origin use a 5-point Gauss-Legendre rule on f(x) x^q directly; on
the single cell touching 0 the power weight is absorbed analytically against
a quadratic fit of f, which keeps the rule exact for the integrable
singularity q in (-1, 0] and avoids quadrature blow-up near 0.
"""

import numpy as np

_GL_X, _GL_W = np.polynomial.legendre.leggauss(5)


def power_integral(a, b, s):
    """Exact ``int_a^b x^s dx`` for a > 0, stable when s is close to -1.

    Written as b^(s+1) * (-expm1((s+1) log(a/b)))/(s+1) so that the s -> -1
    limit log(b/a) is reached without cancellation; needed for mass weights
    t^(M-3) with M barely above 2.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sp1 = s + 1.0
    if abs(sp1) < 1e-14:
        return np.log(b / a)
    return np.exp(sp1 * np.log(b)) * (-np.expm1(sp1 * (np.log(a) - np.log(b)))) / sp1


def power_integral_from_zero(b, s):
    """Exact ``int_0^b x^s dx`` = b^(s+1)/(s+1); requires s > -1."""
    if s <= -1.0:
        raise ValueError(f"x^{s} is not integrable at 0")
    return b ** (s + 1.0) / (s + 1.0)


def weighted_integral(f, cells, power):
    """Composite quadrature of ``int f(x) x^power dx`` over the cell breakpoints.

    ``cells`` is an increasing array of breakpoints; a leading breakpoint at
    exactly 0.0 triggers the analytic first-cell treatment.  ``f`` must accept
    an ndarray and return values elementwise.
    """
    cells = np.asarray(cells, dtype=float)
    a = cells[:-1]
    b = cells[1:]
    total = 0.0
    start = 0
    if a[0] == 0.0:
        b0 = b[0]
        f0, fm, f1 = f(np.array([0.0, 0.5 * b0, b0]))
        # quadratic through (0, f0), (b0/2, fm), (b0, f1)
        c2 = (f1 - 2.0 * fm + f0) * 2.0 / b0**2
        c1 = (f1 - f0) / b0 - c2 * b0
        total += (
            f0 * power_integral_from_zero(b0, power)
            + c1 * power_integral_from_zero(b0, power + 1.0)
            + c2 * power_integral_from_zero(b0, power + 2.0)
        )
        start = 1
    mid = 0.5 * (a[start:] + b[start:])
    half = 0.5 * (b[start:] - a[start:])
    x = mid[:, None] + half[:, None] * _GL_X[None, :]
    fx = f(x.ravel()).reshape(x.shape)
    total += float(np.sum(half[:, None] * _GL_W[None, :] * fx * x**power))
    return total


def graded_cells(x_min=1e-8, n_bulk=400, ratio=1.06, knots=(), include_zero=True):
    """Breakpoints on [0, 1]: geometric ladder from x_min, uniform bulk.

    The ladder grows by ``ratio`` until its local width reaches the uniform
    bulk width 1/n_bulk; ``knots`` (interior points such as profile zeros) are
    spliced in exactly so integrand kinks align with cell boundaries.
    """
    h_max = 1.0 / n_bulk
    ladder = [x_min]
    while ladder[-1] * (ratio - 1.0) < h_max and ladder[-1] * ratio < 1.0:
        ladder.append(ladder[-1] * ratio)
    n_uniform = max(1, int(np.ceil((1.0 - ladder[-1]) / h_max)))
    bulk = np.linspace(ladder[-1], 1.0, n_uniform + 1)[1:]
    pieces = [np.asarray(ladder), bulk]
    if include_zero:
        pieces.insert(0, np.array([0.0]))
    cells = np.concatenate(pieces)
    for k in knots:
        if x_min < k < 1.0:
            cells = np.append(cells, k)
    cells = np.unique(cells)
    keep = np.concatenate([[True], np.diff(cells) > 1e-14])
    cells = cells[keep]
    cells[-1] = 1.0
    return cells


def boundary_graded_cells(n_bulk=400, ratio=1.06, edge=1e-10, knots=()):
    """Breakpoints on [0, 1] graded geometrically toward x = 1.

    Mirror image of :func:`graded_cells`; resolves integrands concentrated in
    a boundary layer at r = 1 (the weight r^(alpha+N-1) at large alpha).
    """
    inner = graded_cells(x_min=edge, n_bulk=n_bulk, ratio=ratio, include_zero=True)
    cells = np.sort(1.0 - inner)
    for k in knots:
        if 0.0 < k < 1.0:
            cells = np.append(cells, k)
    cells = np.unique(cells)
    keep = np.concatenate([[True], np.diff(cells) > 1e-14])
    cells = cells[keep]
    cells[0] = 0.0
    cells[-1] = 1.0
    return cells
