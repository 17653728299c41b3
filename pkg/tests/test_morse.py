import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import henonlab as hl
from henonlab.errors import InvalidArgsError
from henonlab.morse import attach_bounds, morse_index_exhaustive, multiplicity_sum


def test_multiplicity_examples():
    assert hl.spherical_multiplicity(3, 0) == 1
    assert hl.spherical_multiplicity(3, 1) == 3
    assert hl.spherical_multiplicity(3, 2) == 5
    assert hl.spherical_multiplicity(4, 2) == 9
    assert hl.spherical_multiplicity(5, 1) == 5


@given(st.integers(3, 8), st.integers(1, 40))
def test_multiplicity_matches_harmonic_dimension(N, j):
    # dim of degree-j harmonics = C(N+j-1, j) - C(N+j-3, j-2)
    expected = math.comb(N + j - 1, j) - (math.comb(N + j - 3, j - 2) if j >= 2 else 0)
    assert hl.spherical_multiplicity(N, j) == expected


def test_multiplicity_rejects_low_dimension():
    with pytest.raises(InvalidArgsError):
        hl.spherical_multiplicity(2, 1)


def test_index_enumeration_examples():
    # j(j+1) < 30 admits j = 0..4: 1+3+5+7+9 = 25
    assert hl.morse_index([-30.0], 3).total_index == 25
    # only the radial mode survives a shallow eigenvalue
    assert hl.morse_index([-0.5], 3).total_index == 1


def test_index_requires_negative_input():
    with pytest.raises(InvalidArgsError):
        hl.morse_index([-1.0, 0.5], 3)


def test_boundary_ties_flagged_not_counted():
    # -j(N-2+j) exactly: the j=1 shift of -2 lands on zero for N=3
    report = hl.morse_index([-2.0], 3)
    assert (1, 1) in report.degenerate
    assert report.total_index == 1  # only j=0 counted


@given(
    st.lists(st.floats(-5e4, -1e-3), min_size=1, max_size=4),
    st.integers(3, 6),
)
def test_index_matches_exhaustive_enumeration(lams, N):
    lams = sorted(lams)
    assert hl.morse_index(lams, N).total_index == morse_index_exhaustive(lams, N)


def test_index_monotone_in_eigenvalues():
    # lowering every entry can only grow the count
    base = [-37.2, -4.1]
    lower = [-52.9, -6.3]
    assert hl.morse_index(lower, 3).total_index >= hl.morse_index(base, 3).total_index


def test_bound_J_arithmetic():
    J, bound = hl.lower_bound_J(10.0, 3, -2.0, 1)
    assert J == 6
    assert bound == 1 + (6**2 + 2 * 6)  # sum of 2j+1 up to J is J^2 + 2J
    # shallow-eigenvalue limit: J collapses to 1, bound to m + 3m
    J0, bound0 = hl.lower_bound_J(10.0, 3, -1e-12, 1)
    assert J0 == 1 and bound0 == 1 + 3


def test_bound_K_arithmetic():
    K, bound = hl.lower_bound_K(10.0, 3, -4.0, 2, 2.0)
    assert K == 8
    assert bound == 2 + (8**2 + 2 * 8)
    with pytest.raises(InvalidArgsError):
        hl.lower_bound_K(10.0, 3, -4.0, 1, 2.0)
    with pytest.raises(InvalidArgsError):
        hl.lower_bound_K(10.0, 3, -4.0, 2, 1.0)


def test_K_beats_half_alpha_for_deep_branch():
    # with the slowest branch below -1 and theta close to 1, the K cap
    # eventually exceeds 1 + floor(alpha/2)
    lam1 = -14.77002173  # slowest limit branch for p=3, m=2
    for alpha in (50.0, 200.0, 1000.0):
        K, _ = hl.lower_bound_K(alpha, 3, lam1, 2, 1.05)
        assert K > 1 + math.floor(alpha / 2.0)


def test_attach_bounds_roundtrip():
    report = hl.morse_index([-100.0, -9.0], 3, alpha=12.0)
    attach_bounds(report, np.array([-14.77, -0.908]), 2, theta=1.5)
    assert report.bound_J == 2 + 2 * multiplicity_sum(3, report.J)
    assert report.bound_K == 2 + multiplicity_sum(3, report.K)
    # report arithmetic is a pure function of the eigenvalue list
    again = hl.morse_index([-100.0, -9.0], 3, alpha=12.0)
    assert again.total_index == report.total_index
    assert again.pairs == report.pairs
