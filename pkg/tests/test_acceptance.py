"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Each test evaluates its criterion at the stated tolerance on the default
scenario (N=7, coupling ratio 0.71, dt = 0.01, 1000 steps) or the stated
sweep, prints a single summary line with the measured margin, and then
asserts.  The expensive trajectories are session fixtures.
"""

import numpy as np
import pytest
import scipy.linalg

import conftest
import spinflow as sf


def check(label, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}: {label} ({detail})"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def sm1_series(sm1_traj):
    ds = sf.system_distance_series(sm1_traj)
    de = sf.env_distance_series(sm1_traj)
    return ds, de


def test_initial_conditions(default_series):
    ds, de = default_series
    err_s = abs(ds.values[0] - 1.0)
    err_e = abs(de.values[0])
    check(
        "initial conditions D_S(0)=1, D_E(0)=0 within 1e-12",
        err_s <= 1e-12 and err_e <= 1e-12,
        f"|D_S(0)-1| = {err_s:.2e}, |D_E(0)| = {err_e:.2e}",
    )


def test_oracle_equivalence():
    rng = np.random.default_rng(5)
    worst_fid = 1.0
    worst_matvec = 0.0
    worst_trace = 0.0
    for n in (1, 2):
        params = sf.ModelParams(sf.QubitLayout(n), j_se=0.71)
        terms = sf.build_terms(params)
        dense = sf.build_dense(params)
        n_q = params.layout.total_qubits

        dt = 0.05
        stepper = scipy.linalg.expm(-1j * dt * dense)
        psi_fast, _ = sf.make_initial_states(params.layout)
        psi_slow = psi_fast.copy()
        for _ in range(120):
            psi_fast = sf.propagate(psi_fast, terms, dt)
            psi_slow = stepper @ psi_slow
            worst_fid = min(worst_fid, abs(np.vdot(psi_slow, psi_fast)))

        plan = sf.compile_terms(terms, n_q)
        for _ in range(5):
            psi = rng.normal(size=dense.shape[0]) + 1j * rng.normal(size=dense.shape[0])
            psi /= np.linalg.norm(psi)
            worst_matvec = max(worst_matvec, np.max(np.abs(plan.apply(psi) - dense @ psi)))
            for keep in ([0], [1], list(range(1, n_q)), [n_q - 1, 0]):
                fast = sf.partial_trace(psi, keep, n_q).to_dense()
                slow = conftest.naive_partial_trace(psi, keep, n_q)
                worst_trace = max(worst_trace, np.max(np.abs(fast - slow)))

    check(
        "oracle equivalence at N<=2: propagation fidelity >= 1-1e-10 over "
        "120 steps, matvec and partial trace within 1e-12",
        worst_fid >= 1.0 - 1e-10 and worst_matvec <= 1e-12 and worst_trace <= 1e-12,
        f"min fidelity = {worst_fid:.15f}, matvec err = {worst_matvec:.2e}, "
        f"trace err = {worst_trace:.2e}",
    )


def test_conservation(default_traj):
    norm_drift = 0.0
    energy_drift = 0.0
    for branch in ("+", "-"):
        norms = default_traj.norms(branch)
        norm_drift = max(norm_drift, float(np.max(np.abs(norms - 1.0))))
        energy = default_traj.energies(branch)
        energy_drift = max(
            energy_drift,
            float(np.max(np.abs(energy - energy[0])) / abs(energy[0])),
        )
    check(
        "conservation over the default trajectory: norm and relative "
        "energy drift <= 1e-8",
        norm_drift <= 1e-8 and energy_drift <= 1e-8,
        f"norm drift = {norm_drift:.2e}, energy drift = {energy_drift:.2e}",
    )


def test_darwinism_identity(default_traj, default_points):
    layout = default_traj.params.layout
    n_full = layout.n_per_chain
    worst_identity = 0.0
    for i in range(default_traj.n_points):
        psi = default_traj.states_plus[i]
        info = sf.mutual_information(psi, layout, n_full)
        s_sys = sf.entropy_of_subset(psi, [0], layout.total_qubits)
        worst_identity = max(worst_identity, abs(info - 2.0 * s_sys))
    worst_step = np.inf
    for idx in (default_points.index_a, default_points.index_b, default_points.index_c):
        psi = default_traj.states_plus[idx]
        values = [sf.mutual_information(psi, layout, m) for m in range(n_full + 1)]
        worst_step = min(worst_step, float(np.min(np.diff(values))))
    check(
        "full-fragment information equals 2 S(rho_S) within 1e-10 at every "
        "time; fragment information monotone in m within 1e-10 at A, B, C",
        worst_identity <= 1e-10 and worst_step >= -1e-10,
        f"max |I - 2S| = {worst_identity:.2e}, min step = {worst_step:.2e}",
    )


def test_discord_calibration(default_traj, default_points):
    layout = default_traj.params.layout
    n_full = layout.n_per_chain
    worst_discord = 0.0
    worst_info = 0.0
    for idx in (default_points.index_a, default_points.index_b, default_points.index_c):
        psi = default_traj.states_plus[idx]
        d = sf.discord(psi, layout, n_full)
        s_sys = sf.entropy_of_subset(psi, [0], layout.total_qubits)
        info = sf.mutual_information(psi, layout, n_full)
        worst_discord = max(worst_discord, abs(d - s_sys))
        worst_info = max(worst_info, abs(info - 2.0 * d))
    check(
        "full-environment discord equals S(rho_S) within 2e-3 and "
        "I = 2 discord within 4e-3 at A, B, C",
        worst_discord <= 2e-3 and worst_info <= 4e-3,
        f"max |discord - S| = {worst_discord:.2e}, max |I - 2D| = {worst_info:.2e}",
    )


def test_laine_bound(default_traj, default_series, sm1_traj, sm1_series):
    min_slack = np.inf
    max_corr_gap = 0.0
    for traj, (ds, _) in ((default_traj, default_series), (sm1_traj, sm1_series)):
        for i in range(traj.n_points):
            terms = sf.laine_terms(traj, i, ds=ds)
            min_slack = min(min_slack, terms["slack"])
            max_corr_gap = max(
                max_corr_gap, abs(terms["corr_plus"] - terms["corr_minus"])
            )
    check(
        "backflow bound slack >= -1e-9 at every grid point of the N=7 and "
        "N=6 scenarios; the two correlation terms agree within 1e-10",
        min_slack >= -1e-9 and max_corr_gap <= 1e-10,
        f"min slack = {min_slack:.2e}, max corr gap = {max_corr_gap:.2e}",
    )


def test_information_flow_phenomenology(default_series, default_points):
    ds, de = default_series
    end = default_points.index_c + 1
    i_env_max = int(np.argmax(de.values[:end]))
    i_sys_min = int(np.argmin(ds.values[:end]))
    slope = sf.sigma(ds).values
    has_loss = bool(np.any(slope < 0.0))
    has_backflow = bool(np.any(slope > 0.0))
    blp = sf.blp_accumulated(ds)
    check(
        "first cycle: argmax D_E and argmin D_S within one grid step; "
        "dD_S/dt changes sign; accumulated backflow > 0",
        abs(i_env_max - i_sys_min) <= 1 and has_loss and has_backflow and blp > 0.0,
        f"argmax D_E at {i_env_max}, argmin D_S at {i_sys_min}, blp = {blp:.3f}",
    )


def _located(params, t_max=10.0, n_steps=500):
    traj = sf.run_trajectory(params, t_max=t_max, n_steps=n_steps)
    return sf.locate_points(traj)


def test_timing_laws(default_points, sm1_traj, sm1_series):
    t_b = []
    for n in (3, 4, 5, 6):
        t_b.append(_located(sf.ModelParams(sf.QubitLayout(n), j_se=0.71)).t_b)
    t_b.append(default_points.t_b)

    ds6, de6 = sm1_series
    t_a = [
        _located(sf.ModelParams(sf.QubitLayout(6), j_se=ratio)).t_a
        for ratio in (0.3, 0.5)
    ]
    t_a.append(sf.locate_points(sm1_traj, ds=ds6, de=de6).t_a)

    # strict monotonicity without ties is exactly rank correlation +/-1;
    # scipy's Pearson-on-ranks statistic carries rounding noise
    check(
        "timing laws: plateau end strictly later with N (3..7), plateau "
        "entry strictly earlier with coupling ratio (0.3, 0.5, 0.71)",
        bool(np.all(np.diff(t_b) > 0.0)) and bool(np.all(np.diff(t_a) < 0.0)),
        f"t_B = {[round(v, 2) for v in t_b]}, t_A = {[round(v, 2) for v in t_a]}",
    )


def test_chain_symmetry(default_traj):
    layout = default_traj.params.layout
    n = layout.total_qubits
    worst = 0.0
    for states in (default_traj.states_plus, default_traj.states_minus):
        for i in range(default_traj.n_points):
            psi = states[i]
            for k in range(1, layout.n_per_chain + 1):
                rho_a = sf.partial_trace(psi, [layout.chain_qubit("a", k)], n)
                rho_b = sf.partial_trace(psi, [layout.chain_qubit("b", k)], n)
                d = sf.trace_distance(rho_a.to_dense(), rho_b.to_dense())
                worst = max(worst, d)
    check(
        "chain symmetry: mirror qubits carry identical states within 1e-10 "
        "at every sampled time",
        worst <= 1e-10,
        f"max distance = {worst:.2e}",
    )
