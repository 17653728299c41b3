import numpy as np
import pytest
from hypothesis import settings

import henonlab as hl
from henonlab import sweep as sw

settings.register_profile("ci", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("ci")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def lane_emden_m1():
    return hl.solve_lane_emden(3.0, 1)


@pytest.fixture(scope="session")
def lane_emden_m2():
    return hl.solve_lane_emden(3.0, 2)


@pytest.fixture(scope="session")
def henon_pair_alpha40():
    """(u, v, rmap) for p=3, N=3, alpha=40, m=2."""
    params = hl.ProblemParams(p=3.0, N=3, alpha=40.0, m=2)
    v = hl.solve_transformed(params.M_alpha, 3.0, 2)
    v.params = params
    rmap = hl.RescaleMap(40.0, 3.0)
    u = hl.rescale_v_to_u(v, rmap, 3)
    return u, v, rmap


@pytest.fixture(scope="session")
def mesh_m2(lane_emden_m2):
    return hl.GradedMesh.build(n=8000, knots=tuple(lane_emden_m2.zeros[:-1]))


@pytest.fixture(scope="session")
def limit_spectrum_m2(lane_emden_m2, mesh_m2):
    pencil = hl.assemble_pencil(lane_emden_m2, 2.0, 3.0, mesh_m2)
    return hl.negative_eigenvalues(pencil, 2)


@pytest.fixture(scope="session")
def sweep_m2():
    """The default nodal sweep: p=3, N=3, m=2, alpha in {10 * 2^k, k=0..5}."""
    cfg = sw.SweepConfig(p=3.0, N=3, m=2, alphas=(10.0, 20.0, 40.0, 80.0, 160.0, 320.0))
    return sw.run_sweep(cfg)


@pytest.fixture(scope="session")
def sweep_m1():
    """The positive-solution sweep used for the embedding-constant checks."""
    cfg = sw.SweepConfig(p=3.0, N=3, m=1, alphas=(10.0, 20.0, 40.0, 80.0, 160.0, 320.0))
    return sw.run_sweep(cfg)


def grid(n=4001):
    return np.linspace(0.0, 1.0, n)
