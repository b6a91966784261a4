"""Shared fixtures.

The two session trajectories are the expensive inputs reused across the
measure and acceptance tests: the default-size register (N=7) on a fine
grid and the smaller N=6 register used by the inequality checks.
"""

import numpy as np
import pytest

import spinflow as sf

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance pass/fail lines after the test summary."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def default_traj():
    """N=7, ratio 0.71, dt = 0.01: the default physics scenario."""
    params = sf.ModelParams(sf.QubitLayout(7), j_se=0.71)
    return sf.run_trajectory(params, t_max=10.0, n_steps=1000)


@pytest.fixture(scope="session")
def default_series(default_traj):
    ds = sf.system_distance_series(default_traj)
    de = sf.env_distance_series(default_traj)
    return ds, de


@pytest.fixture(scope="session")
def default_points(default_traj, default_series):
    ds, de = default_series
    return sf.locate_points(default_traj, ds=ds, de=de)


@pytest.fixture(scope="session")
def sm1_traj():
    """N=6 (12 environment qubits), the inequality-figure scenario."""
    params = sf.ModelParams(sf.QubitLayout(6), j_se=0.71)
    return sf.run_trajectory(params, t_max=10.0, n_steps=500)


@pytest.fixture(scope="session")
def small_traj():
    """Cheap N=3 trajectory for plumbing tests."""
    params = sf.ModelParams(sf.QubitLayout(3), j_se=0.71)
    return sf.run_trajectory(params, t_max=6.0, n_steps=300)


def naive_partial_trace(psi, keep, n_qubits):
    """Index-loop partial trace: the slow oracle the fast path must match."""
    keep = list(keep)
    rest = [q for q in range(n_qubits) if q not in keep]
    dim_k = 1 << len(keep)
    rho = np.zeros((dim_k, dim_k), dtype=complex)

    def sub_index(basis, qubits):
        out = 0
        for pos, q in enumerate(qubits):
            out |= ((basis >> q) & 1) << pos
        return out

    for i in range(1 << n_qubits):
        for j in range(1 << n_qubits):
            if sub_index(i, rest) != sub_index(j, rest):
                continue
            rho[sub_index(i, keep), sub_index(j, keep)] += psi[i] * np.conj(psi[j])
    return rho


@pytest.fixture
def partial_trace_oracle():
    return naive_partial_trace
