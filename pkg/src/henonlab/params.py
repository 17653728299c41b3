"""Problem parameters for the weighted radial Dirichlet problem on the unit ball.

The quadruple (p, N, alpha, m) fixes one solve: nonlinearity exponent p > 1,
space dimension N >= 2, radial weight exponent alpha >= 0 and the number m of
nodal sets of the target solution.  Two derived quantities recur everywhere:

* ``M_alpha = 2(alpha + N)/(alpha + 2)``, the effective dimension of the
  transformed radial equation in the t = r^((alpha+2)/2) variable, and
* ``alpha_p = max(0, (p(N-2) - (N+2))/2)``, the weight threshold below which
  the problem stops being subcritical; every solver refuses alpha <= alpha_p.
"""

from dataclasses import dataclass, field

from .errors import InvalidArgsError, SubcriticalError


def critical_alpha(p: float, N: int) -> float:
    """Smallest admissible weight exponent: max(0, (p(N-2) - (N+2))/2)."""
    if p <= 1.0:
        raise InvalidArgsError(f"need p > 1, got p={p}")
    if N < 2:
        raise InvalidArgsError(f"need N >= 2, got N={N}")
    return max(0.0, (p * (N - 2) - (N + 2)) / 2.0)


@dataclass(frozen=True)
class ProblemParams:
    """The quadruple (p, N, alpha, m) plus the derived M_alpha and alpha_p."""

    p: float
    N: int
    alpha: float
    m: int
    M_alpha: float = field(init=False)
    alpha_p: float = field(init=False)

    def __post_init__(self):
        if self.p <= 1.0:
            raise InvalidArgsError(f"need p > 1, got p={self.p}")
        if self.N < 2:
            raise InvalidArgsError(f"need N >= 2, got N={self.N}")
        if self.alpha < 0.0:
            raise InvalidArgsError(f"need alpha >= 0, got alpha={self.alpha}")
        if self.m < 1:
            raise InvalidArgsError(f"need m >= 1, got m={self.m}")
        object.__setattr__(self, "M_alpha", 2.0 * (self.alpha + self.N) / (self.alpha + 2.0))
        object.__setattr__(self, "alpha_p", critical_alpha(self.p, self.N))

    def require_subcritical(self):
        """Raise unless alpha > alpha_p (equivalently p(M-2) < M+2)."""
        if self.alpha <= self.alpha_p:
            raise SubcriticalError(
                f"alpha={self.alpha} is not above the critical threshold "
                f"alpha_p={self.alpha_p} for p={self.p}, N={self.N}"
            )


def alpha_to_M(params: ProblemParams) -> float:
    """Effective dimension 2(alpha + N)/(alpha + 2) of the transformed equation.

    Lies in [2, N]; equals 2 exactly when N = 2 and decreases toward 2 as
    alpha grows when N >= 3.
    """
    return params.M_alpha


def require_subcritical_M(M: float, p: float):
    """Raise unless 2 <= M and p(M-2) < M+2, the transformed-side subcriticality."""
    if M < 2.0:
        raise SubcriticalError(f"need M >= 2, got M={M}")
    if p * (M - 2.0) >= M + 2.0:
        raise SubcriticalError(f"p(M-2) < M+2 fails for p={p}, M={M}")
