"""Distinguishability, backflow, and information measures.

Everything here consumes pure global states (or their reduced factors)
and produces scalars or time series: trace distances for the system,
environment and single environment qubits, the derivative/backflow
functionals built on them, the data-processing inequality terms, and
the mutual-information / Holevo / discord family over fragments.

Entropies and mutual information are in bits (log base 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolve import Trajectory
from .reduce import (
    bipartition_matrix,
    entropy_of_subset,
    factored_reduction,
    partial_trace,
)
from .qreg import DensityOp, QubitLayout

SINGULAR_CLIP = 1e-12  # discard factor directions below this weight
BRANCH_CLIP = 1e-14  # measurement branches below this probability


@dataclass
class Series:
    """A scalar sampled on a uniform time grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape or self.times.ndim != 1:
            raise ValueError(
                f"times {self.times.shape} and values {self.values.shape} "
                "must be matching 1-d arrays"
            )

    def __len__(self) -> int:
        return self.times.shape[0]


def trace_distance(a, b) -> float:
    """(1/2) tr |rho_a - rho_b| for density operators on the same qubits."""
    if isinstance(a, DensityOp) and isinstance(b, DensityOp):
        if a.qubits != b.qubits:
            raise ValueError(f"operand qubits differ: {a.qubits} vs {b.qubits}")
        if a.is_factored and b.is_factored:
            return trace_distance_lowrank(a.factor, b.factor)
        a, b = a.to_dense(), b.to_dense()
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(a - b))))


def trace_distance_lowrank(b1: np.ndarray, b2: np.ndarray) -> float:
    """Trace distance of B1 B1^dag and B2 B2^dag without forming them.

    The difference lives in span(B1, B2); an economy SVD of the stacked
    factors gives an orthonormal basis of that span, and the difference
    projected there is a small Hermitian matrix.
    """
    if b1.shape[0] != b2.shape[0]:
        raise ValueError(f"row dimensions differ: {b1.shape[0]} vs {b2.shape[0]}")
    stacked = np.concatenate([b1, b2], axis=1)
    q, s, _ = np.linalg.svd(stacked, full_matrices=False)
    q = q[:, s > SINGULAR_CLIP]
    c1 = q.conj().T @ b1
    c2 = q.conj().T @ b2
    diff = c1 @ c1.conj().T - c2 @ c2.conj().T
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


# ---------------------------------------------------------------------
# time series over a trajectory
# ---------------------------------------------------------------------


def system_distance_series(traj: Trajectory) -> Series:
    """D(rho_S^+(t), rho_S^-(t)) on the trajectory grid."""
    n = traj.params.layout.total_qubits
    vals = np.empty(traj.n_points)
    for i in range(traj.n_points):
        rho_p = partial_trace(traj.states_plus[i], [0], n)
        rho_m = partial_trace(traj.states_minus[i], [0], n)
        vals[i] = trace_distance(rho_p, rho_m)
    return Series(traj.times, vals)


def env_distance_series(traj: Trajectory) -> Series:
    """D(rho_E^+(t), rho_E^-(t)); both factors have rank <= 2."""
    layout = traj.params.layout
    env = layout.environment()
    n = layout.total_qubits
    vals = np.empty(traj.n_points)
    for i in range(traj.n_points):
        b_p = bipartition_matrix(traj.states_plus[i], n, env)
        b_m = bipartition_matrix(traj.states_minus[i], n, env)
        vals[i] = trace_distance_lowrank(b_p, b_m)
    return Series(traj.times, vals)


def env_qubit_distance_series(traj: Trajectory, chain: str, k: int) -> Series:
    """Distinguishability carried by the single qubit (chain, k)."""
    layout = traj.params.layout
    q = layout.chain_qubit(chain, k)
    n = layout.total_qubits
    vals = np.empty(traj.n_points)
    for i in range(traj.n_points):
        rho_p = partial_trace(traj.states_plus[i], [q], n)
        rho_m = partial_trace(traj.states_minus[i], [q], n)
        vals[i] = trace_distance(rho_p, rho_m)
    return Series(traj.times, vals)


def sigma(series: Series) -> Series:
    """Time derivative of a distance series (central differences inside,
    one-sided at the ends)."""
    if len(series) < 3:
        raise ValueError("need at least 3 points to differentiate")
    steps = np.diff(series.times)
    if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ValueError("time grid must be uniform")
    return Series(series.times, np.gradient(series.values, series.times, edge_order=1))


def blp_accumulated(series: Series) -> float:
    """Total distinguishability gained over all intervals where it rose.

    Summing the positive increments of the sampled series telescopes
    exactly over each rising stretch, so the result does not depend on
    how a rise is split across grid points.
    """
    inc = np.diff(series.values)
    return float(np.sum(inc[inc > 0.0]))


# ---------------------------------------------------------------------
# data-processing inequality for the conditional pair
# ---------------------------------------------------------------------


def laine_terms(traj: Trajectory, tau_index: int, ds: Series | None = None) -> dict:
    """Terms of D_S(t) - D_S(tau) <= D_E(tau) + corr+(tau) + corr-(tau).

    Returns lhs_sup (supremum of the left side over t > tau), the three
    right-hand terms, their sum as 'bound', and 'slack' = bound - lhs_sup.
    At the final grid point the supremum runs over an empty set and is 0.
    """
    if not 0 <= tau_index < traj.n_points:
        raise ValueError(
            f"tau_index must be in [0, {traj.n_points}), got {tau_index}"
        )
    layout = traj.params.layout
    n = layout.total_qubits
    env = layout.environment()
    if ds is None:
        ds = system_distance_series(traj)
    gains = ds.values[tau_index + 1 :] - ds.values[tau_index]
    lhs_sup = float(max(np.max(gains), 0.0)) if gains.size else 0.0

    b_p = bipartition_matrix(traj.states_plus[tau_index], n, env)
    b_m = bipartition_matrix(traj.states_minus[tau_index], n, env)
    d_env = trace_distance_lowrank(b_p, b_m)

    corr = {}
    for branch, psi in (("+", traj.states_plus[tau_index]), ("-", traj.states_minus[tau_index])):
        # pure global state vs the product of its marginals; with the
        # system on bit 0 the product factor in register order is
        # kron(B_E, B_S), using a compact 2x2 factor of the system state
        # so the product factor stays rank <= 4
        rho_s = partial_trace(psi, [0], n).to_dense()
        evals, vecs = np.linalg.eigh(rho_s)
        c_s = vecs * np.sqrt(np.clip(evals, 0.0, None))
        b_e = bipartition_matrix(psi, n, env)
        corr[branch] = trace_distance_lowrank(
            psi.reshape(-1, 1), np.kron(b_e, c_s)
        )
    bound = d_env + corr["+"] + corr["-"]
    return {
        "lhs_sup": lhs_sup,
        "d_env": d_env,
        "corr_plus": corr["+"],
        "corr_minus": corr["-"],
        "bound": bound,
        "slack": bound - lhs_sup,
    }


# ---------------------------------------------------------------------
# fragment information measures
# ---------------------------------------------------------------------


def subset_mutual_information(psi: np.ndarray, n_qubits: int, part_a, part_b) -> float:
    """I(A : B) = S_A + S_B - S_AB in bits for disjoint qubit subsets."""
    part_a = sorted(part_a)
    part_b = sorted(part_b)
    if set(part_a) & set(part_b):
        raise ValueError(f"subsets overlap: {part_a} and {part_b}")
    s_a = entropy_of_subset(psi, part_a, n_qubits)
    s_b = entropy_of_subset(psi, part_b, n_qubits)
    s_ab = entropy_of_subset(psi, part_a + part_b, n_qubits)
    return s_a + s_b - s_ab


def mutual_information(psi: np.ndarray, layout: QubitLayout, m: int) -> float:
    """I(S : F_m) in bits for the fragment of the m closest qubits per chain."""
    if m == 0:
        return 0.0
    return subset_mutual_information(
        psi, layout.total_qubits, [0], layout.fragment(m)
    )


@dataclass(frozen=True)
class MeasurementSetting:
    """Projective measurement direction on the system qubit."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * np.pi:
            raise ValueError(f"phi must be in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class HolevoResult:
    value: float
    setting: MeasurementSetting


def _conditional_env_states(psi: np.ndarray, setting: MeasurementSetting):
    """Unnormalised environment states after projecting the system qubit.

    The basis is m0 = cos(theta)|0> + e^{i phi} sin(theta)|1> and its
    orthogonal completion m1 = e^{-i phi} sin(theta)|0> - cos(theta)|1>.
    With the system on bit 0, psi[0::2] and psi[1::2] are the |0> and
    |1> components in environment order.
    """
    c, s = np.cos(setting.theta), np.sin(setting.theta)
    phase = np.exp(1j * setting.phi)
    psi0 = psi[0::2]
    psi1 = psi[1::2]
    env0 = c * psi0 + s * np.conj(phase) * psi1
    env1 = s * phase * psi0 - c * psi1
    return env0, env1


def holevo(
    psi: np.ndarray, layout: QubitLayout, m: int, setting: MeasurementSetting
) -> float:
    """Holevo quantity of the measurement record in the fragment F_m."""
    if m == 0:
        return 0.0
    n = layout.total_qubits
    n_env = 2 * layout.n_per_chain
    frag_global = layout.fragment(m)
    # same qubits re-indexed on the environment-only register
    frag_local = [q - 1 for q in frag_global]
    chi = entropy_of_subset(psi, frag_global, n)
    for env in _conditional_env_states(psi, setting):
        p = float(np.vdot(env, env).real)
        if p < BRANCH_CLIP:
            continue
        chi -= p * entropy_of_subset(env / np.sqrt(p), frag_local, n_env)
    return chi


def maximize_holevo(
    psi: np.ndarray,
    layout: QubitLayout,
    m: int,
    *,
    grid: int = 64,
    step_tol: float = 1e-3,
) -> HolevoResult:
    """Best projective system measurement for the fragment record.

    Deterministic: a coarse grid scan (first maximum wins in (theta, phi)
    scan order) followed by pattern search with halving steps until the
    step is below step_tol radians.
    """
    if m == 0:
        return HolevoResult(0.0, MeasurementSetting(0.0, 0.0))

    def value(theta, phi):
        theta = min(max(theta, 0.0), np.pi)
        phi = phi % (2.0 * np.pi)
        return holevo(psi, layout, m, MeasurementSetting(theta, phi))

    thetas = np.linspace(0.0, np.pi, grid)
    phis = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    best = (-np.inf, 0.0, 0.0)
    for th in thetas:
        for ph in phis:
            v = value(th, ph)
            if v > best[0]:
                best = (v, th, ph)
    v_best, th, ph = best
    step = max(np.pi / (grid - 1), 2.0 * np.pi / grid)
    while step >= step_tol:
        moved = False
        for cand_th, cand_ph in (
            (th - step, ph),
            (th + step, ph),
            (th, ph - step),
            (th, ph + step),
        ):
            v = value(cand_th, cand_ph)
            if v > v_best:
                v_best = v
                th = min(max(cand_th, 0.0), np.pi)
                ph = cand_ph % (2.0 * np.pi)
                moved = True
        if not moved:
            step *= 0.5
    return HolevoResult(v_best, MeasurementSetting(th, ph))


def discord(
    psi: np.ndarray,
    layout: QubitLayout,
    m: int,
    *,
    grid: int = 64,
    step_tol: float = 1e-3,
) -> float:
    """Quantum part of I(S : F_m): what no system measurement reveals."""
    if m == 0:
        return 0.0
    info = mutual_information(psi, layout, m)
    best = maximize_holevo(psi, layout, m, grid=grid, step_tol=step_tol)
    return info - best.value
