"""Change of variables between the r- and t-profiles and its induced maps.

The weight-dependent rescaling

    v(t) = (2/(alpha+2))^(2/(p-1)) * u(t^(2/(alpha+2))),   t = r^((alpha+2)/2)

turns the m-nodal r-profile u of the weighted problem into the m-nodal
t-profile v of the transformed equation with effective dimension
M = 2(alpha+N)/(alpha+2).  Zeros map elementwise by t = r^((alpha+2)/2),
extrema magnitudes by the amplitude factor, and the weighted Dirichlet
energies are linked exactly:

    int_0^1 |v'|^2 t^(M-1) dt = (2/(alpha+2))^((p+3)/(p-1)) int_0^1 |u'|^2 r^(N-1) dr.

Derivatives under the map are computed with the chain rule analytically,
never re-differenced, so first-derivative diagnostics survive the round trip.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, VariableMismatchError
from .quadrature import boundary_graded_cells, graded_cells, weighted_integral
from .radial import RadialProfile


@dataclass(frozen=True)
class RescaleMap:
    """Amplitude factor and zero-map exponent of the rescaling at (alpha, p)."""

    alpha: float
    p: float
    factor: float = field(init=False)
    exponent: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "factor", (2.0 / (self.alpha + 2.0)) ** (2.0 / (self.p - 1.0)))
        object.__setattr__(self, "exponent", (self.alpha + 2.0) / 2.0)


def map_zeros(r_zeros, alpha: float):
    """Elementwise zero map t = r^((alpha+2)/2); order preserving on (0, 1]."""
    r = np.asarray(r_zeros, dtype=float)
    if np.any(r <= 0.0) or np.any(r > 1.0):
        raise DomainError("zero locations must lie in (0, 1]")
    return r ** ((alpha + 2.0) / 2.0)


def unmap_zeros(t_zeros, alpha: float):
    """Inverse zero map r = t^(2/(alpha+2))."""
    t = np.asarray(t_zeros, dtype=float)
    if np.any(t <= 0.0) or np.any(t > 1.0):
        raise DomainError("zero locations must lie in (0, 1]")
    return t ** (2.0 / (alpha + 2.0))


def rescale_u_to_v(u: RadialProfile, rmap: RescaleMap) -> RadialProfile:
    """Map an r-profile to its t-profile: v(t) = factor * u(t^(1/exponent))."""
    if u.variable != "r":
        raise VariableMismatchError("rescale_u_to_v expects an r-variable profile")
    factor, e = rmap.factor, rmap.exponent
    N = u.weight_power
    M = 2.0 * (rmap.alpha + N) / (rmap.alpha + 2.0)

    def value_fn(t):
        return factor * u.value_fn(t ** (1.0 / e))

    def deriv_fn(t):
        # chain rule; t = 0 handled apart since 1/e - 1 < 0 for alpha > 0
        out = np.zeros_like(t)
        pos = t > 0.0
        tp = t[pos]
        out[pos] = factor / e * tp ** (1.0 / e - 1.0) * u.deriv_fn(tp ** (1.0 / e))
        return out

    zeros = u.zeros**e
    zeros[-1] = 1.0
    ext_locs = u.extrema_locs**e
    ext_vals = factor * u.extrema_vals
    nodes = np.unique(np.concatenate([graded_cells(1e-8, 256, 1.05), u.nodes**e]))
    nodes = nodes[np.concatenate([[True], np.diff(nodes) > 1e-14])]
    return RadialProfile(
        variable="t",
        p=u.p,
        weight_power=M,
        nodes=nodes,
        values=value_fn(nodes),
        derivs=deriv_fn(nodes),
        zeros=zeros,
        extrema_locs=ext_locs,
        extrema_vals=ext_vals,
        amplitude=factor * u.amplitude,
        params=u.params,
        value_fn=value_fn,
        deriv_fn=deriv_fn,
    )


def rescale_v_to_u(v: RadialProfile, rmap: RescaleMap, N: int) -> RadialProfile:
    """Map a t-profile back to the r-variable: u(r) = v(r^exponent)/factor."""
    if v.variable != "t":
        raise VariableMismatchError("rescale_v_to_u expects a t-variable profile")
    factor, e = rmap.factor, rmap.exponent

    def value_fn(r):
        return v.value_fn(r**e) / factor

    def deriv_fn(r):
        return v.deriv_fn(r**e) * e * r ** (e - 1.0) / factor

    zeros = v.zeros ** (1.0 / e)
    zeros[-1] = 1.0
    ext_locs = v.extrema_locs ** (1.0 / e)
    ext_vals = v.extrema_vals / factor
    mapped = v.nodes ** (1.0 / e)
    first = mapped[mapped > 0.0][0] if np.any(mapped > 0.0) else 0.5
    nodes = np.unique(np.concatenate([np.linspace(0.0, first, 33), mapped]))
    nodes = nodes[np.concatenate([[True], np.diff(nodes) > 1e-14])]
    return RadialProfile(
        variable="r",
        p=v.p,
        weight_power=float(N),
        nodes=nodes,
        values=value_fn(nodes),
        derivs=deriv_fn(nodes),
        zeros=zeros,
        extrema_locs=ext_locs,
        extrema_vals=ext_vals,
        amplitude=v.amplitude / factor,
        params=v.params,
        value_fn=value_fn,
        deriv_fn=deriv_fn,
    )


def scaled_extrema(u: RadialProfile, rmap: RescaleMap):
    """Rescaled extrema magnitudes factor * |extrema(u)|, decreasing across nodal sets."""
    return rmap.factor * np.abs(u.extrema_vals)


def quadrature_cells(profile: RadialProfile, n_bulk: int = 400):
    """Cell breakpoints adapted to the profile's variable.

    t-profiles integrate against weights singular at 0, so cells grade toward
    the origin; r-profiles develop a boundary layer at r = 1 for large alpha,
    so cells grade toward 1.  Profile zeros are spliced in as breakpoints.
    """
    knots = tuple(profile.zeros[:-1])
    if profile.variable == "t":
        return graded_cells(1e-8, n_bulk=n_bulk, ratio=1.06, knots=knots)
    return boundary_graded_cells(n_bulk=n_bulk, ratio=1.06, knots=knots)


def gradient_identity_residual(u: RadialProfile, v: RadialProfile, rmap: RescaleMap) -> float:
    """Relative mismatch of the exact weighted-gradient identity.

    Both sides are computed with independent quadratures (t-graded vs
    r-boundary-graded meshes); for genuinely related profiles the residual is
    limited only by quadrature and solver accuracy.
    """
    if u.variable != "r" or v.variable != "t":
        raise VariableMismatchError("expected (u, v) = (r-profile, t-profile)")
    M = v.weight_power
    N = u.weight_power
    lhs = weighted_integral(lambda t: v.deriv_fn(t) ** 2, quadrature_cells(v), M - 1.0)
    rhs = weighted_integral(lambda r: u.deriv_fn(r) ** 2, quadrature_cells(u), N - 1.0)
    scale = (2.0 / (rmap.alpha + 2.0)) ** ((rmap.p + 3.0) / (rmap.p - 1.0))
    return abs(lhs - scale * rhs) / abs(lhs)
