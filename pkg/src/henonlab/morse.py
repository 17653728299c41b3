"""Morse index assembly from the negative radial spectrum.

Every negative eigenvalue of the full singular linearized operator splits as
``Lam_hat_i + j(N-2+j)`` with Lam_hat_i a negative radial eigenvalue and j a
spherical-harmonic degree; the degree-j shift carries multiplicity N_j (the
dimension of degree-j spherical harmonics on the (N-1)-sphere, with N_0 = 1
for the radial mode).  The total Morse index is the multiplicity-weighted
count of strictly negative combinations, and two closed-form lower bounds
J(alpha) and K(alpha, theta) follow from the quadratic growth of Lam_hat.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgsError

TIE_TOLERANCE = 1e-9


def spherical_multiplicity(N: int, j: int) -> int:
    """Dimension N_j = (N+2j-2)(N+j-3)!/((N-2)! j!) of degree-j harmonics.

    N_0 = 1 by the radial-mode convention.  Exact integer arithmetic
    throughout (Python integers do not overflow).
    """
    if N < 3:
        raise InvalidArgsError(f"need N >= 3, got N={N}")
    if j < 0:
        raise InvalidArgsError(f"need j >= 0, got j={j}")
    if j == 0:
        return 1
    return (N + 2 * j - 2) * math.factorial(N + j - 3) // (math.factorial(N - 2) * math.factorial(j))


def multiplicity_sum(N: int, j_max: int) -> int:
    """Sum of N_j for j = 1..j_max (0 when j_max < 1)."""
    return sum(spherical_multiplicity(N, j) for j in range(1, j_max + 1))


@dataclass
class MorseReport:
    """Index count and bounds at one weight exponent.

    ``pairs`` lists every admissible (i, j, N_j) with
    Lam_hat_i + j(N-2+j) < 0; ``degenerate`` records (i, j) combinations
    within TIE_TOLERANCE of zero, which are flagged rather than counted.
    Bounds are attached by the pipeline when limit eigenvalues are available.
    """

    alpha: float
    lambda_hat: np.ndarray
    N: int
    pairs: list
    total_index: int
    degenerate: list = field(default_factory=list)
    J: int | None = None
    bound_J: int | None = None
    theta: float | None = None
    K: int | None = None
    bound_K: int | None = None


def morse_index(lambda_hat, N: int, alpha: float = float("nan")) -> MorseReport:
    """Multiplicity-weighted count of negative eigenvalues of the decomposition.

    For each radial eigenvalue the admissible degrees are j = 0 up to just
    below the positive root of j^2 + (N-2) j + Lam_hat_i, with strict
    negativity required; near-zero combinations are flagged as degenerate.
    """
    if N < 3:
        raise InvalidArgsError(f"need N >= 3, got N={N}")
    lam = np.asarray(lambda_hat, dtype=float)
    if np.any(lam >= 0.0):
        raise InvalidArgsError("all Lambda_hat entries must be negative")
    pairs = []
    degenerate = []
    total = 0
    for i, lh in enumerate(lam, start=1):
        # positive root of j^2 + (N-2) j + lh = 0 caps the enumeration
        root = (-(N - 2) + math.sqrt((N - 2) ** 2 - 4.0 * lh)) / 2.0
        for j in range(0, int(math.floor(root)) + 2):
            shifted = lh + j * (N - 2 + j)
            if abs(shifted) <= TIE_TOLERANCE:
                degenerate.append((i, j))
            elif shifted < 0.0:
                mult = spherical_multiplicity(N, j)
                pairs.append((i, j, mult))
                total += mult
    return MorseReport(
        alpha=alpha,
        lambda_hat=lam,
        N=N,
        pairs=pairs,
        total_index=total,
        degenerate=degenerate,
    )


def lower_bound_J(alpha: float, N: int, lambda_m: float, m: int):
    """Degree cap J and bound m + m * sum_{j<=J} N_j from the slowest branch.

    ``lambda_m`` is the largest (closest to zero) limit eigenvalue; the cap is
    ceil(sqrt((N-2)^2 - (lambda_m/2) alpha^2)/2).
    """
    if lambda_m >= 0.0:
        raise InvalidArgsError("lambda_m must be negative")
    J = math.ceil(math.sqrt((N - 2) ** 2 - (lambda_m / 2.0) * alpha**2) / 2.0)
    return J, m + m * multiplicity_sum(N, J)


def lower_bound_K(alpha: float, N: int, lambda_m_minus_1: float, m: int, theta: float):
    """Degree cap K(theta) and bound m + (m-1) * sum_{j<=K} N_j (nodal case).

    Requires m >= 2 and theta > 1; uses the second-slowest limit branch
    lambda_{m-1}.
    """
    if m < 2:
        raise InvalidArgsError("the K bound needs m >= 2")
    if theta <= 1.0:
        raise InvalidArgsError("theta must exceed 1")
    if lambda_m_minus_1 >= 0.0:
        raise InvalidArgsError("lambda_{m-1} must be negative")
    K = math.ceil(math.sqrt((N - 2) ** 2 - (lambda_m_minus_1 / theta) * alpha**2) / 2.0)
    return K, m + (m - 1) * multiplicity_sum(N, K)


def attach_bounds(report: MorseReport, lambda_limit, m: int, theta: float | None = None) -> MorseReport:
    """Fill the J (and, when m >= 2 and theta > 1, K) bounds on a report."""
    lam = np.asarray(lambda_limit, dtype=float)
    report.J, report.bound_J = lower_bound_J(report.alpha, report.N, lam[-1], m)
    if m >= 2 and theta is not None:
        report.theta = theta
        report.K, report.bound_K = lower_bound_K(report.alpha, report.N, lam[-2], m, theta)
    return report


def morse_index_exhaustive(lambda_hat, N: int, j_cap: int = 10_000) -> int:
    """Brute-force enumeration up to j_cap; oracle for the closed-form cap."""
    lam = np.asarray(lambda_hat, dtype=float)
    total = 0
    for lh in lam:
        for j in range(0, j_cap + 1):
            shifted = lh + j * (N - 2 + j)
            if shifted < -TIE_TOLERANCE:
                total += spherical_multiplicity(N, j)
            elif shifted > TIE_TOLERANCE:
                break
    return total
