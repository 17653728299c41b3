"""Radial nodal profiles, singular spectra and Morse-index bounds for the
weighted superlinear Dirichlet problem on the unit ball.

The library solves the m-nodal radial profiles of

    -div(grad u) = |x|^alpha |u|^(p-1) u   in the unit ball,  u = 0 on the boundary,

their large-alpha rescaled limits, the negative spectrum of the singular
linearized operator, Morse-index counts with closed-form lower bounds, energy
levels and best embedding constants, and runs alpha sweeps that track all of
these against their asymptotic targets.
"""

from .energy import (
    EnergyBreakdown,
    NodalPiece,
    best_constant_2d,
    best_constant_radial,
    energy_breakdown,
    nehari_projection,
    nodal_pieces,
    sphere_area,
)
from .errors import (
    CrossCheckMismatchError,
    DomainError,
    HenonLabError,
    HorizonExceededError,
    InvalidArgsError,
    MeshTooCoarseError,
    NotConvergedError,
    NotPositiveSolutionError,
    SubcriticalError,
    VariableMismatchError,
    ZeroPieceError,
)
from .morse import (
    MorseReport,
    lower_bound_J,
    lower_bound_K,
    morse_index,
    spherical_multiplicity,
)
from .params import ProblemParams, alpha_to_M, critical_alpha
from .radial import (
    RadialProfile,
    SolverConfig,
    Trajectory,
    integrate_unit_ivp,
    ode_residual_sup,
    solve_henon_radial,
    solve_lane_emden,
    solve_transformed,
)
from .spectral import (
    EigenPencil,
    EigenResult,
    GradedMesh,
    SingularSpectrum,
    assemble_pencil,
    eigenvalue_curve_mu,
    negative_eigenvalues,
    singular_spectrum_henon,
)
from .sweep import SweepConfig, SweepReport, fit_expansion, monotonicity_report, run_checks, run_sweep
from .transforms import (
    RescaleMap,
    gradient_identity_residual,
    map_zeros,
    rescale_u_to_v,
    rescale_v_to_u,
    scaled_extrema,
)

__version__ = "0.1.0"
