"""Energies, Nehari projections, solution levels and best embedding constants.

All energies are full N-dimensional integrals: the radial quadrature carries
the unit-sphere area omega_{N-1} = 2 pi^(N/2) / Gamma(N/2).  For a solution
the Dirichlet and weighted L^(p+1) terms coincide (Nehari identity), the
functional value phi collapses to (1/2 - 1/(p+1)) * dirichlet, and that value
is the solution level.  The best radial embedding constant of the weighted
problem is read off the positive solution, S = (int |grad u|^2)^((p-1)/(p+1)),
and its planar analogue comes from the unweighted limit profile.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveSolutionError, VariableMismatchError, ZeroPieceError
from .params import ProblemParams
from .quadrature import weighted_integral
from .radial import RadialProfile
from .transforms import quadrature_cells

_SPHERE_AREA = {N: 2.0 * math.pi ** (N / 2.0) / math.gamma(N / 2.0) for N in range(2, 11)}


def sphere_area(N: int) -> float:
    """Surface area of the unit (N-1)-sphere (2 pi, 4 pi, 2 pi^2, ...)."""
    if N in _SPHERE_AREA:
        return _SPHERE_AREA[N]
    return 2.0 * math.pi ** (N / 2.0) / math.gamma(N / 2.0)


@dataclass
class NodalPiece:
    """Restriction of a profile to one nodal annulus [lo, hi] (zero outside).

    ``scale`` multiplies the values; scaling is exact in the integrals
    (dirichlet ~ scale^2, weighted term ~ scale^(p+1)).
    """

    profile: RadialProfile
    lo: float
    hi: float
    index: int
    scale: float = 1.0

    def scaled(self, s: float) -> "NodalPiece":
        return NodalPiece(self.profile, self.lo, self.hi, self.index, self.scale * s)


@dataclass
class PieceEnergy:
    dirichlet: float
    weighted_lp: float
    phi: float


@dataclass
class EnergyBreakdown:
    """Full-ball energy integrals of an r-profile and their per-nodal split."""

    dirichlet: float
    weighted_lp: float
    phi: float
    level: float
    per_nodal: list

    @property
    def nehari_residual(self) -> float:
        return abs(self.dirichlet - self.weighted_lp) / abs(self.dirichlet)


def nodal_pieces(u: RadialProfile):
    """The m nodal restrictions of an r-profile, split at its zeros."""
    if u.variable != "r":
        raise VariableMismatchError("nodal pieces are defined on r-profiles")
    edges = np.concatenate([[0.0], u.zeros])
    return [
        NodalPiece(u, float(edges[i]), float(edges[i + 1]), i + 1)
        for i in range(len(edges) - 1)
    ]


def _piece_cells(piece: NodalPiece, n_bulk: int):
    cells = quadrature_cells(piece.profile, n_bulk=n_bulk)
    cells = cells[(cells >= piece.lo) & (cells <= piece.hi)]
    cells = np.unique(np.concatenate([[piece.lo, piece.hi], cells]))
    return cells


def piece_integrals(piece: NodalPiece, alpha: float, n_bulk: int = 400):
    """(dirichlet, weighted L^(p+1)) of one nodal piece, omega factor included."""
    u = piece.profile
    N = u.weight_power
    p = u.p
    omega = sphere_area(int(round(N)))
    cells = _piece_cells(piece, n_bulk)
    dirichlet = piece.scale**2 * omega * weighted_integral(
        lambda r: u.deriv_fn(r) ** 2, cells, N - 1.0
    )
    weighted = abs(piece.scale) ** (p + 1.0) * omega * weighted_integral(
        lambda r: np.abs(u.value_fn(r)) ** (p + 1.0), cells, alpha + N - 1.0
    )
    return dirichlet, weighted


def energy_breakdown(u: RadialProfile, n_bulk: int = 400) -> EnergyBreakdown:
    """Dirichlet / weighted / functional / level integrals of an r-profile.

    ``level`` uses the solution-level formula (1/2 - 1/(p+1)) * dirichlet
    (valid on the Nehari set); ``phi`` is evaluated from both integrals, so
    phi == level precisely as well as the profile solves the problem.
    """
    if u.variable != "r":
        raise VariableMismatchError("energy_breakdown expects an r-variable profile")
    if u.params is None:
        raise VariableMismatchError("energy_breakdown needs profile params (alpha)")
    alpha = u.params.alpha
    p = u.p
    per = []
    dirichlet = 0.0
    weighted = 0.0
    for piece in nodal_pieces(u):
        d, w = piece_integrals(piece, alpha, n_bulk)
        per.append(PieceEnergy(d, w, 0.5 * d - w / (p + 1.0)))
        dirichlet += d
        weighted += w
    phi = 0.5 * dirichlet - weighted / (p + 1.0)
    level = (0.5 - 1.0 / (p + 1.0)) * dirichlet
    return EnergyBreakdown(
        dirichlet=dirichlet, weighted_lp=weighted, phi=phi, level=level, per_nodal=per
    )


def nehari_projection(piece: NodalPiece, alpha: float, p: float, n_bulk: int = 400) -> float:
    """The unique s > 0 with s * piece on the Nehari set:
    (dirichlet / weighted)^(1/(p-1))."""
    d, w = piece_integrals(piece, alpha, n_bulk)
    if w <= 0.0 or d <= 0.0:
        raise ZeroPieceError(f"nodal piece {piece.index} is numerically zero")
    return (d / w) ** (1.0 / (p - 1.0))


def projected_level(piece: NodalPiece, alpha: float, p: float, n_bulk: int = 400) -> float:
    """Functional value at the Nehari projection of a piece:
    (1/2 - 1/(p+1)) * dirichlet^((p+1)/(p-1)) / weighted^(2/(p-1))."""
    d, w = piece_integrals(piece, alpha, n_bulk)
    if w <= 0.0 or d <= 0.0:
        raise ZeroPieceError(f"nodal piece {piece.index} is numerically zero")
    return (0.5 - 1.0 / (p + 1.0)) * d ** ((p + 1.0) / (p - 1.0)) / w ** (2.0 / (p - 1.0))


def best_constant_radial(params: ProblemParams, u_pos: RadialProfile, n_bulk: int = 400) -> float:
    """Best radial embedding constant from the positive solution:
    (int |grad u|^2)^((p-1)/(p+1))."""
    if len(u_pos.zeros) != 1:
        raise NotPositiveSolutionError("the best constant needs the positive (m=1) solution")
    eb = energy_breakdown(u_pos, n_bulk=n_bulk)
    return eb.dirichlet ** ((params.p - 1.0) / (params.p + 1.0))


def rayleigh_quotient_radial(params: ProblemParams, u: RadialProfile, n_bulk: int = 400) -> float:
    """Direct quotient dirichlet / weighted^(2/(p+1)); equals the best
    constant on the positive solution up to the Nehari residual."""
    eb = energy_breakdown(u, n_bulk=n_bulk)
    return eb.dirichlet / eb.weighted_lp ** (2.0 / (params.p + 1.0))


def best_constant_2d(p: float, w_pos: RadialProfile, n_bulk: int = 400) -> float:
    """Planar best constant from the positive limit profile (full 2D integral,
    weight t, factor 2 pi): (int_{B^2} |grad w|^2)^((p-1)/(p+1))."""
    if w_pos.variable != "t":
        raise VariableMismatchError("best_constant_2d expects the t-variable limit profile")
    if len(w_pos.zeros) != 1:
        raise NotPositiveSolutionError("the planar best constant needs the positive profile")
    cells = quadrature_cells(w_pos, n_bulk=n_bulk)
    dirichlet = 2.0 * math.pi * weighted_integral(lambda t: w_pos.deriv_fn(t) ** 2, cells, 1.0)
    return dirichlet ** ((p - 1.0) / (p + 1.0))


def scaled_best_constant(params: ProblemParams, s_radial: float) -> float:
    """(2/(alpha+2))^((p+3)/(p+1)) * S — the normalization whose large-alpha
    limit is (omega_{N-1}/(2 pi))^((p-1)/(p+1)) times the planar constant."""
    return (2.0 / (params.alpha + 2.0)) ** ((params.p + 3.0) / (params.p + 1.0)) * s_radial


def limit_constant_target(p: float, N: int, s_planar: float) -> float:
    """The large-alpha limit value of the scaled best constant."""
    return (sphere_area(N) / (2.0 * math.pi)) ** ((p - 1.0) / (p + 1.0)) * s_planar
