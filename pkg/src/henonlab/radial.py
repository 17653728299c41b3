"""Radial solvers for the weighted superlinear Dirichlet problem on the unit ball.

Two one-dimensional initial value problems drive everything:

* the transformed equation ``v'' + (M-1)/t v' + |v|^(p-1) v = 0`` on (0, 1)
  with ``v'(0) = v(1) = 0`` and v(0) > 0, where M = 2(alpha+N)/(alpha+2); and
* the original radial equation ``u'' + (N-1)/r u' + r^alpha |u|^(p-1) u = 0``
  used as an independent cross-check at small alpha.

Both are solved without shooting: the equations are scaling invariant
(``v -> c^(2/(p-1)) v(c t)`` maps solutions to solutions), so one trajectory
started at unit amplitude is integrated until its m-th zero T_m, and the
boundary condition is imposed by rescaling T_m to 1.  Known uniqueness of the
m-nodal radial solution makes this trajectory *the* solution, and the nodal
count is exact by construction.

The removable singularity of the friction term at 0 is handled by starting at
a small t_seed > 0 from the second-order series of the even solution.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import CrossCheckMismatchError, HorizonExceededError, InvalidArgsError
from .params import ProblemParams, require_subcritical_M
from .quadrature import graded_cells


def _scalar_aware(fn, x):
    """Apply an array-valued fn, preserving scalar in / scalar out."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = fn(arr)
    if np.ndim(x) == 0:
        return float(out[0])
    return out


@dataclass(frozen=True)
class SolverConfig:
    """Integrator knobs; defaults are calibrated for ~1e-9 zero accuracy."""

    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    t_seed: float = 1e-6
    max_horizon: float = 0.0  # 0 means automatic (10 * m)
    dense_nodes: int = 1024
    grading_ratio: float = 1.05

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise InvalidArgsError("tolerances must be positive")
        if not 0.0 < self.t_seed < 1e-2:
            raise InvalidArgsError("t_seed must be a small positive offset")
        if self.dense_nodes < 64:
            raise InvalidArgsError("dense_nodes must be at least 64")
        if self.grading_ratio <= 1.0:
            raise InvalidArgsError("grading_ratio must exceed 1")


@dataclass
class Trajectory:
    """A unit-amplitude trajectory of ``y'' + (c/x) y' + x^a |y|^(p-1) y = 0``.

    ``zeros`` are the first requested sign changes, ``extrema`` the interior
    critical points located before the last zero.  ``value``/``deriv``
    evaluate the dense interpolant, falling back to the starting series below
    the seed point.
    """

    friction: float          # c = M-1 (transformed) or N-1 (direct)
    weight_exp: float        # a = 0 (transformed) or alpha (direct)
    p: float
    t_seed: float
    zeros: np.ndarray
    extrema: np.ndarray
    sol: object = field(repr=False)

    def value(self, x):
        return _scalar_aware(self._value_arr, x)

    def deriv(self, x):
        return _scalar_aware(self._deriv_arr, x)

    def _value_arr(self, x):
        out = np.empty(x.shape)
        inside = x >= self.t_seed
        if np.any(inside):
            out[inside] = self.sol(x[inside])[0]
        if np.any(~inside):
            out[~inside] = self._series_value(x[~inside])
        return out

    def _deriv_arr(self, x):
        out = np.empty(x.shape)
        inside = x >= self.t_seed
        if np.any(inside):
            out[inside] = self.sol(x[inside])[1]
        if np.any(~inside):
            out[~inside] = self._series_deriv(x[~inside])
        return out

    def _series_value(self, x):
        a, c = self.weight_exp, self.friction
        return 1.0 - x ** (a + 2.0) / ((a + 2.0) * (a + c + 1.0))

    def _series_deriv(self, x):
        a, c = self.weight_exp, self.friction
        return -(x ** (a + 1.0)) / (a + c + 1.0)


@dataclass
class RadialProfile:
    """A solved radial profile on [0, 1], in the r- or t-variable.

    ``weight_power`` is the exponent W of the defining weighted form
    ``-(x^(W-1) y')' = x^(W-1+weight_exp) |y|^(p-1) y``: M for t-profiles,
    N for r-profiles.  ``zeros`` lie in (0, 1] with the last entry exactly 1;
    an m-nodal profile has m-1 interior zeros.  ``extrema_locs`` holds one
    extremum per nodal set (the first is the origin) with strictly decreasing
    magnitudes.  Profiles are immutable by convention after construction;
    value/deriv evaluate the underlying dense interpolant anywhere in [0, 1].
    """

    variable: str            # "r" or "t"
    p: float
    weight_power: float
    nodes: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    zeros: np.ndarray
    extrema_locs: np.ndarray
    extrema_vals: np.ndarray
    amplitude: float
    params: ProblemParams | None = None
    weight_exp: float = 0.0  # alpha for direct r-profiles, 0 otherwise
    value_fn: object = field(default=None, repr=False)
    deriv_fn: object = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return len(self.zeros)

    def value(self, x):
        return _scalar_aware(self.value_fn, x)

    def deriv(self, x):
        return _scalar_aware(self.deriv_fn, x)


def integrate_unit_ivp(M: float, p: float, zero_target: int, config: SolverConfig) -> Trajectory:
    """Integrate the transformed equation at unit amplitude up to its
    ``zero_target``-th zero.

    Starts at ``t_seed`` from the series ``1 - t^2/(2M)``; sign changes are
    located on the dense output by the integrator's root finder.  The horizon
    starts at max_horizon (default 10*m) and doubles at most twice before
    :class:`HorizonExceededError` is raised — in the subcritical range every
    trajectory oscillates, so running out of horizon indicates a
    configuration error.
    """
    require_subcritical_M(M, p)
    if zero_target < 1:
        raise InvalidArgsError("zero_target must be >= 1")
    return _integrate_weighted_ivp(M - 1.0, 0.0, p, zero_target, config)


def _integrate_weighted_ivp(friction, weight_exp, p, zero_target, config):
    a, c = weight_exp, friction

    def rhs(x, y):
        v, dv = y
        return (dv, -c / x * dv - x**a * abs(v) ** (p - 1.0) * v)

    def zero_event(x, y):
        return y[0]

    zero_event.terminal = zero_target

    def extremum_event(x, y):
        return y[1]

    t0 = config.t_seed
    y0 = (
        1.0 - t0 ** (a + 2.0) / ((a + 2.0) * (a + c + 1.0)),
        -(t0 ** (a + 1.0)) / (a + c + 1.0),
    )
    horizon = config.max_horizon if config.max_horizon > 0.0 else 10.0 * zero_target
    for _ in range(3):
        sol = solve_ivp(
            rhs,
            (t0, horizon),
            y0,
            method="RK45",
            rtol=config.rel_tol,
            atol=config.abs_tol,
            events=[zero_event, extremum_event],
            dense_output=True,
        )
        zeros = sol.t_events[0]
        if len(zeros) >= zero_target:
            zeros = zeros[:zero_target]
            extrema = sol.t_events[1]
            extrema = extrema[extrema < zeros[-1]]
            return Trajectory(
                friction=friction,
                weight_exp=weight_exp,
                p=p,
                t_seed=t0,
                zeros=zeros,
                extrema=extrema,
                sol=sol.sol,
            )
        horizon *= 2.0
    raise HorizonExceededError(
        f"zero #{zero_target} not found below horizon {horizon / 2.0} "
        f"(friction={friction}, weight_exp={weight_exp}, p={p})"
    )


def _profile_grid(config, knots):
    return graded_cells(
        x_min=1e-8,
        n_bulk=config.dense_nodes,
        ratio=config.grading_ratio,
        knots=knots,
        include_zero=True,
    )


def _profile_from_trajectory(traj, M, p, config):
    """Rescale the m-th zero of a unit trajectory to 1."""
    T_m = traj.zeros[-1]
    amp = T_m ** (2.0 / (p - 1.0))

    def value_fn(t):
        return amp * traj.value(t * T_m)

    def deriv_fn(t):
        return amp * T_m * traj.deriv(t * T_m)

    zeros = traj.zeros / T_m
    zeros[-1] = 1.0
    ext_locs = np.concatenate([[0.0], traj.extrema / T_m])
    ext_vals = np.concatenate([[amp], value_fn(traj.extrema / T_m)])
    nodes = _profile_grid(config, knots=np.concatenate([zeros[:-1], ext_locs[1:]]))
    return RadialProfile(
        variable="t",
        p=p,
        weight_power=M,
        nodes=nodes,
        values=value_fn(nodes),
        derivs=deriv_fn(nodes),
        zeros=zeros,
        extrema_locs=ext_locs,
        extrema_vals=ext_vals,
        amplitude=amp,
        value_fn=value_fn,
        deriv_fn=deriv_fn,
    )


def solve_transformed(M: float, p: float, m: int, config: SolverConfig = SolverConfig()) -> RadialProfile:
    """The unique m-nodal profile of the transformed equation, positive at 0.

    Built as ``v(t) = T_m^(2/(p-1)) V(T_m t)`` from the unit trajectory V and
    its m-th zero T_m; the amplitude is ``T_m^(2/(p-1))``.
    """
    traj = integrate_unit_ivp(M, p, m, config)
    return _profile_from_trajectory(traj, M, p, config)


def solve_lane_emden(p: float, m: int, config: SolverConfig = SolverConfig()) -> RadialProfile:
    """The m-nodal radial profile of the unweighted planar problem (M = 2).

    This is the common large-alpha limit of the rescaled profiles for every
    dimension N.
    """
    return solve_transformed(2.0, p, m, config)


def solve_henon_radial(params: ProblemParams, config: SolverConfig = SolverConfig()) -> RadialProfile:
    """The m-nodal radial solution in the original r-variable.

    Computed by solving the transformed equation at M_alpha and applying the
    inverse rescaling.  For alpha <= 5 the result is cross-checked against a
    direct integration of ``u'' + (N-1)/r u' + r^alpha |u|^(p-1) u = 0``; the
    two routes must agree to 1e-5 in sup norm.
    """
    from .transforms import RescaleMap, rescale_v_to_u

    params.require_subcritical()
    v = solve_transformed(params.M_alpha, params.p, params.m, config)
    v.params = params
    u = rescale_v_to_u(v, RescaleMap(params.alpha, params.p), params.N)
    u.params = params
    if params.alpha <= 5.0:
        _cross_check_direct(u, params, config)
    return u


def _cross_check_direct(u, params, config):
    traj = _integrate_weighted_ivp(params.N - 1.0, params.alpha, params.p, params.m, config)
    R_m = traj.zeros[-1]
    amp = R_m ** ((params.alpha + 2.0) / (params.p - 1.0))
    rr = np.linspace(0.0, 1.0, 2001)
    gap = float(np.max(np.abs(amp * traj.value(rr * R_m) - u.value(rr))))
    if gap > 1e-5:
        raise CrossCheckMismatchError(
            f"direct and transformed routes differ by {gap:.3e} (> 1e-5) "
            f"for p={params.p}, N={params.N}, alpha={params.alpha}, m={params.m}"
        )


def ode_residual_sup(profile: RadialProfile, t_lo: float = 1e-3, samples: int = 2000) -> float:
    """Rescaled defining-equation residual, sup over [t_lo, 1].

    Evaluates ``|y'' + (c/x) y' + x^a |y|^(p-1) y|`` on the dense interpolant,
    with y'' from a fourth-order central difference of the stored derivative,
    and divides by amplitude^p (the scale of the nonlinear term).  The
    division makes the bound meaningful across amplitudes: the raw residual of
    any profile scales with amplitude^p under the exact scaling invariance.
    """
    c = profile.weight_power - 1.0
    a = profile.weight_exp
    p = profile.p
    x = np.linspace(t_lo, 1.0, samples)
    # the stencil may overshoot 1 by 2h; the dense interpolant extrapolates
    # its final segment, which stays within the interpolation error there
    h = np.minimum(1e-3, x / 5.0)
    d2 = (
        -profile.deriv(x + 2 * h)
        + 8.0 * profile.deriv(x + h)
        - 8.0 * profile.deriv(x - h)
        + profile.deriv(x - 2 * h)
    ) / (12.0 * h)
    res = d2 + c / x * profile.deriv(x) + x**a * np.abs(profile.value(x)) ** (p - 1.0) * profile.value(x)
    return float(np.max(np.abs(res)) / max(1.0, profile.amplitude) ** p)


def rescaled_trajectory_residual(traj: Trajectory, scale: float, t_lo: float = 1e-3,
                                 samples: int = 1500) -> float:
    """Residual of ``c^(2/(p-1)) V(c x)`` against the transformed equation.

    Checks the scaling invariance numerically for any c in (0, T_m]: the
    rescaled trajectory must satisfy the same equation.  Returns the sup-norm
    residual on [t_lo, T_m/scale - margin], normalized like
    :func:`ode_residual_sup`.
    """
    p = traj.p
    c = traj.friction
    amp = scale ** (2.0 / (p - 1.0))
    hi = traj.zeros[-1] / scale
    x = np.linspace(t_lo, 0.995 * hi, samples)
    h = np.minimum(1e-3, x / 5.0)

    def dval(y):
        return amp * scale * traj.deriv(y * scale)

    def val(y):
        return amp * traj.value(y * scale)

    d2 = (-dval(x + 2 * h) + 8.0 * dval(x + h) - 8.0 * dval(x - h) + dval(x - 2 * h)) / (12.0 * h)
    res = d2 + c / x * dval(x) + np.abs(val(x)) ** (p - 1.0) * val(x)
    return float(np.max(np.abs(res)) / max(1.0, amp) ** p)
