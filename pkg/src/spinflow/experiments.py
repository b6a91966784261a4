"""Scenario runner: named experiments emitted as CSV series.

Each scenario evolves the paired conditional trajectories, evaluates the
relevant measures, and writes one or more CSV files into the output
directory. Files carry `#`-prefixed metadata lines (parameters, located
event times) followed by a header row; values are written with repr's
shortest round-trip formatting so a rerun with the same configuration
is bit-identical.

Event points on the distance curves:
  A: the environment distinguishability finishes its initial rise and
     enters a plateau,
  B: the plateau ends and information starts flowing back,
  C: the system distinguishability completes its first revival.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .evolve import Trajectory, run_trajectory, save_trajectory
from .hamiltonian import ModelParams
from .measures import (
    Series,
    env_distance_series,
    env_qubit_distance_series,
    laine_terms,
    maximize_holevo,
    mutual_information,
    sigma,
    subset_mutual_information,
    system_distance_series,
)
from .qreg import QubitLayout

SCENARIOS = (
    "fig2",
    "fig3",
    "sm_inequality",
    "sm_sweep_je",
    "sm_sweep_jse",
    "sm_mi_time",
    "sm_discord",
    "custom",
)
SWEEP_SCENARIOS = ("sm_sweep_je", "sm_sweep_jse")

MAX_STEP = 0.02  # coarsest allowed grid spacing for default step counts
# calibrated on the finite-size wiggles of D_E: during the plateau the
# slope oscillates with amplitude up to ~0.08, while the collapse that
# ends the plateau sustains slopes beyond ~0.5
PLATEAU_THRESHOLD = 0.1
PLATEAU_SUSTAIN = 3  # grid steps the slope condition must persist
RISE_FLOOR = 0.01  # below this peak D_E there is no transfer to detect
DEFAULT_RATIO = 0.71
DEFAULT_SWEEP = (0.25, 0.5, 0.71, 1.0)
# timing-law validity flags for sweep summaries
COMPARABLE_ABOVE = 0.9  # system-chain coupling comparable to intra-chain
WEAK_BELOW = 0.15  # too weak for the plateau picture


class ConfigError(ValueError):
    """Invalid scenario configuration (bad key, value, or combination)."""


class PlateauError(RuntimeError):
    """The environment distance series has no detectable plateau."""


@dataclass(frozen=True)
class PointsABC:
    """Grid locations of the plateau entry/exit and the first revival."""

    index_a: int
    index_b: int
    index_c: int
    t_a: float
    t_b: float
    t_c: float
    threshold: float

    def __post_init__(self):
        if not 0.0 < self.t_a < self.t_b < self.t_c:
            raise ValueError(
                f"points must be ordered 0 < t_A < t_B < t_C, got "
                f"({self.t_a}, {self.t_b}, {self.t_c})"
            )


def _local_maxima(values: np.ndarray) -> np.ndarray:
    """Indices i (interior) with values[i] >= both neighbours."""
    v = values
    mask = (v[1:-1] >= v[:-2]) & (v[1:-1] >= v[2:])
    return np.nonzero(mask)[0] + 1


def locate_points(
    traj: Trajectory,
    *,
    ds: Series | None = None,
    de: Series | None = None,
    threshold: float = PLATEAU_THRESHOLD,
) -> PointsABC:
    """Find the plateau entry (A), plateau exit (B), and first revival (C).

    A is the first local maximum of D_E after which |dD_E/dt| stays below
    `threshold` for PLATEAU_SUSTAIN grid steps; B is the last plateau
    point, one step before dD_E/dt first drops below -threshold for
    PLATEAU_SUSTAIN consecutive steps (sustained, so the finite-size
    wiggles riding on the plateau do not end it); C is the first local
    maximum of D_S after B. Earliest qualifying index wins.
    """
    if ds is None:
        ds = system_distance_series(traj)
    if de is None:
        de = env_distance_series(traj)
    if float(np.max(de.values)) < RISE_FLOOR:
        raise PlateauError(
            "environment distinguishability never rises above "
            f"{RISE_FLOOR}; no plateau to detect (threshold {threshold})"
        )
    slope = sigma(de).values
    n = len(de)
    sustain = PLATEAU_SUSTAIN

    index_a = -1
    for i in _local_maxima(de.values):
        if i + sustain >= n:
            break
        if np.all(np.abs(slope[i + 1 : i + 1 + sustain]) < threshold):
            index_a = int(i)
            break
    if index_a < 0:
        raise PlateauError(
            f"no local maximum of D_E holds |dD_E/dt| < {threshold} "
            f"for {sustain} grid steps; no plateau entry found"
        )

    index_b = -1
    for j in range(index_a + 1, n - sustain + 1):
        if np.all(slope[j : j + sustain] < -threshold):
            index_b = j - 1
            break
    if index_b < 0:
        raise PlateauError(
            f"dD_E/dt never drops below -{threshold} for {sustain} "
            "consecutive steps after the plateau entry; trajectory too "
            "short to see the plateau end"
        )

    index_c = -1
    for i in _local_maxima(ds.values):
        if i > index_b:
            index_c = int(i)
            break
    if index_c < 0:
        raise PlateauError(
            "no local maximum of D_S after the plateau end; trajectory "
            "too short to see the first revival"
        )
    t = traj.times
    return PointsABC(
        index_a,
        index_b,
        index_c,
        float(t[index_a]),
        float(t[index_b]),
        float(t[index_c]),
        threshold,
    )


# ---------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------


def default_steps(t_max: float) -> int:
    """Smallest step count keeping the grid spacing at or below MAX_STEP."""
    return max(2, math.ceil(t_max / MAX_STEP))


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str = "fig2"
    n: int = 7
    ratio: float = DEFAULT_RATIO
    t_max: float = 10.0
    n_steps: int = 0  # 0: derive from t_max via default_steps
    out_dir: str = "out"
    sweep: tuple = ()
    threads: int = 1
    checkpoint: bool = False

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"unknown scenario {self.scenario!r}; choose from {', '.join(SCENARIOS)}"
            )
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ConfigError(f"n must be an integer >= 1, got {self.n!r}")
        if not (np.isfinite(self.ratio) and self.ratio >= 0.0):
            raise ConfigError(f"ratio must be finite and >= 0, got {self.ratio!r}")
        if not (np.isfinite(self.t_max) and self.t_max > 0.0):
            raise ConfigError(f"t_max must be finite and > 0, got {self.t_max!r}")
        steps = self.n_steps if self.n_steps else default_steps(self.t_max)
        if not (isinstance(steps, int) and steps >= 2):
            raise ConfigError(f"n_steps must be an integer >= 2, got {self.n_steps!r}")
        object.__setattr__(self, "n_steps", steps)
        if self.sweep and self.scenario not in SWEEP_SCENARIOS:
            raise ConfigError(
                f"scenario {self.scenario!r} takes no sweep list"
            )
        if self.scenario in SWEEP_SCENARIOS:
            sweep = tuple(self.sweep) if self.sweep else DEFAULT_SWEEP
            if not all(np.isfinite(v) and v > 0.0 for v in sweep):
                raise ConfigError(f"sweep values must be finite and > 0, got {sweep}")
            object.__setattr__(self, "sweep", sweep)
        if not (isinstance(self.threads, int) and self.threads >= 1):
            raise ConfigError(f"threads must be an integer >= 1, got {self.threads!r}")

    def params(self, ratio: float | None = None) -> ModelParams:
        return ModelParams(
            layout=QubitLayout(self.n),
            j_se=self.ratio if ratio is None else ratio,
            j_e=1.0,
        )


# captions fix the sizes: the inequality and sweep figures use 2N=12
_SCENARIO_N = {"sm_inequality": 6, "sm_sweep_je": 6, "sm_sweep_jse": 6}

_FILE_KEYS = {
    "scenario": str,
    "n": int,
    "ratio": float,
    "t_max": float,
    "n_steps": int,
    "out": str,
    "sweep": str,
    "threads": int,
    "checkpoint": bool,
}


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


def _parse_sweep(text: str) -> tuple:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"bad sweep list {text!r}: {exc}") from exc


def read_config_file(path) -> dict:
    """Plain `key = value` lines; `#` comments; unknown keys are errors."""
    raw = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _FILE_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in raw:
                raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
            raw[key] = value
    out = {}
    for key, value in raw.items():
        kind = _FILE_KEYS[key]
        try:
            if kind is bool:
                out[key] = _parse_bool(value)
            elif key == "sweep":
                out[key] = _parse_sweep(value)
            else:
                out[key] = kind(value)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{path}: bad value for {key!r}: {value!r}") from exc
    return out


def parse_config(path=None, flags: dict | None = None) -> ScenarioConfig:
    """Merge a config file with flag overrides (flags win) into a config."""
    merged = {}
    if path is not None:
        merged.update(read_config_file(path))
    if flags:
        merged.update({k: v for k, v in flags.items() if v is not None})
    scenario = merged.get("scenario", "fig2")
    if "n" not in merged and scenario in _SCENARIO_N:
        merged["n"] = _SCENARIO_N[scenario]
    if "out" in merged:
        merged["out_dir"] = merged.pop("out")
    try:
        return ScenarioConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(path, metadata: dict, header: list, columns: list) -> None:
    """One CSV file: `# key: value` metadata lines, header row, data rows."""
    columns = [np.asarray(c) for c in columns]
    n_rows = columns[0].shape[0]
    if any(c.shape != (n_rows,) for c in columns):
        raise ValueError("all columns must be 1-d and the same length")
    if len(header) != len(columns):
        raise ValueError(f"{len(header)} names for {len(columns)} columns")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in metadata.items():
            fh.write(f"# {key}: {value}\n")
        fh.write(",".join(header) + "\n")
        for i in range(n_rows):
            fh.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def _base_metadata(config: ScenarioConfig, ratio: float | None = None) -> dict:
    return {
        "scenario": config.scenario,
        "n_per_chain": config.n,
        "j_se_over_je": _fmt(config.ratio if ratio is None else ratio),
        "t_max": _fmt(config.t_max),
        "n_steps": config.n_steps,
        "backend": _kernels.backend_name(),
    }


def _points_metadata(points: PointsABC | None, reason: str | None = None) -> dict:
    meta = {"plateau_threshold": _fmt(PLATEAU_THRESHOLD)}
    if points is not None:
        meta["t_A"] = _fmt(points.t_a)
        meta["t_B"] = _fmt(points.t_b)
        meta["t_C"] = _fmt(points.t_c)
    elif reason:
        meta["points"] = f"not located ({reason})"
    return meta


# ---------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------


def _distance_bundle(traj: Trajectory):
    """The series every figure-2-style output needs."""
    ds = system_distance_series(traj)
    de = env_distance_series(traj)
    per_qubit = [
        env_qubit_distance_series(traj, "a", k)
        for k in range(1, traj.params.layout.n_per_chain + 1)
    ]
    return ds, de, per_qubit


def _write_fig2_style(path, config, traj, ds, de, per_qubit, points, reason):
    n = traj.params.layout.n_per_chain
    header = (
        ["t", "D_S", "D_E"]
        + [f"D_E_{k}" for k in range(1, n + 1)]
        + ["sigma_S", "sigma_E"]
    )
    # distances are clamped onto [0, 1] to strip sub-epsilon rounding
    columns = (
        [traj.times, np.clip(ds.values, 0.0, 1.0), np.clip(de.values, 0.0, 1.0)]
        + [np.clip(s.values, 0.0, 1.0) for s in per_qubit]
        + [sigma(ds).values, sigma(de).values]
    )
    meta = _base_metadata(config)
    meta.update(_points_metadata(points, reason))
    write_csv(path, meta, header, columns)


def _locate_or_none(traj, ds, de):
    try:
        return locate_points(traj, ds=ds, de=de), None
    except PlateauError as exc:
        return None, str(exc)


def _run_fig2(config: ScenarioConfig, out_dir: str) -> list:
    traj = run_trajectory(
        config.params(), config.t_max, config.n_steps, threads=config.threads
    )
    ds, de, per_qubit = _distance_bundle(traj)
    points, reason = _locate_or_none(traj, ds, de)
    name = "custom.csv" if config.scenario == "custom" else "fig2.csv"
    path = os.path.join(out_dir, name)
    _write_fig2_style(path, config, traj, ds, de, per_qubit, points, reason)
    written = [path]
    if config.checkpoint:
        ckpt = os.path.join(out_dir, "trajectory.bin")
        save_trajectory(ckpt, traj)
        written.append(ckpt)
    return written


def _run_fig3(config: ScenarioConfig, out_dir: str) -> list:
    traj = run_trajectory(
        config.params(), config.t_max, config.n_steps, threads=config.threads
    )
    ds = system_distance_series(traj)
    de = env_distance_series(traj)
    points = locate_points(traj, ds=ds, de=de)
    layout = traj.params.layout
    ms = np.arange(1, layout.n_per_chain + 1)
    cols = {named: np.empty(ms.shape[0]) for named in ("A", "B", "C")}
    for label, idx in (("A", points.index_a), ("B", points.index_b), ("C", points.index_c)):
        psi = traj.states_plus[idx]
        for j, m in enumerate(ms):
            cols[label][j] = mutual_information(psi, layout, int(m))
    meta = _base_metadata(config)
    meta.update(_points_metadata(points))
    path = os.path.join(out_dir, "fig3.csv")
    write_csv(
        path,
        meta,
        ["m", "I_at_A", "I_at_B", "I_at_C"],
        [ms, cols["A"], cols["B"], cols["C"]],
    )
    return [path]


def _run_sm_inequality(config: ScenarioConfig, out_dir: str) -> list:
    traj = run_trajectory(
        config.params(), config.t_max, config.n_steps, threads=config.threads
    )
    ds = system_distance_series(traj)
    names = ("lhs_sup", "d_env", "corr_plus", "corr_minus", "slack")
    cols = {name: np.empty(traj.n_points) for name in names}
    for i in range(traj.n_points):
        terms = laine_terms(traj, i, ds=ds)
        for name in names:
            cols[name][i] = terms[name]
    path = os.path.join(out_dir, "sm_inequality.csv")
    write_csv(
        path,
        _base_metadata(config),
        ["t"] + list(names),
        [traj.times] + [cols[name] for name in names],
    )
    return [path]


def _regime_flag(ratio: float) -> str:
    if ratio > COMPARABLE_ABOVE:
        return "comparable couplings: timing laws unreliable"
    if ratio < WEAK_BELOW:
        return "weak system-chain coupling: timing laws unreliable"
    return ""


def _run_sweep(config: ScenarioConfig, out_dir: str) -> list:
    # the model only feels the coupling ratio: sweeping the chain rate at
    # fixed system rate and vice versa trace out the same ratio list, so
    # both sweep scenarios share this runner and record which knob turned
    knob = "j_e" if config.scenario == "sm_sweep_je" else "j_se"
    written = []
    summary_t_a = []
    summary_t_b = []
    flags = {}
    for ratio in config.sweep:
        traj = run_trajectory(
            config.params(ratio), config.t_max, config.n_steps, threads=config.threads
        )
        ds, de, per_qubit = _distance_bundle(traj)
        points, reason = _locate_or_none(traj, ds, de)
        point_config = replace(config, ratio=ratio, sweep=())
        path = os.path.join(out_dir, f"sweep_{knob}_{_fmt(ratio)}.csv")
        _write_fig2_style(path, point_config, traj, ds, de, per_qubit, points, reason)
        written.append(path)
        summary_t_a.append(points.t_a if points else math.nan)
        summary_t_b.append(points.t_b if points else math.nan)
        flag = _regime_flag(ratio)
        if reason:
            flag = f"{flag}; {reason}" if flag else reason
        if flag:
            flags[ratio] = flag
    meta = _base_metadata(config)
    del meta["j_se_over_je"]  # the summary's first column carries the ratios
    meta["swept_coupling"] = knob
    meta["plateau_threshold"] = _fmt(PLATEAU_THRESHOLD)
    for ratio, flag in flags.items():
        meta[f"flag_{_fmt(ratio)}"] = flag
    path = os.path.join(out_dir, "sweep_summary.csv")
    write_csv(
        path,
        meta,
        ["j_se_over_je", "t_A", "t_B"],
        [np.asarray(config.sweep), np.asarray(summary_t_a), np.asarray(summary_t_b)],
    )
    written.append(path)
    return written


def _run_sm_mi_time(config: ScenarioConfig, out_dir: str) -> list:
    traj = run_trajectory(
        config.params(), config.t_max, config.n_steps, threads=config.threads
    )
    layout = traj.params.layout
    n_q = layout.total_qubits
    n = layout.n_per_chain
    frag_cols = [np.empty(traj.n_points) for _ in range(n)]
    qubit_cols = [np.empty(traj.n_points) for _ in range(n)]
    for i in range(traj.n_points):
        psi = traj.states_plus[i]
        for m in range(1, n + 1):
            frag_cols[m - 1][i] = mutual_information(psi, layout, m)
        for k in range(1, n + 1):
            qubit_cols[k - 1][i] = subset_mutual_information(
                psi, n_q, [0], [layout.chain_qubit("a", k)]
            )
    meta = _base_metadata(config)
    meta["single_qubit_chain"] = "a"
    path = os.path.join(out_dir, "sm_mi_time.csv")
    write_csv(
        path,
        meta,
        ["t"]
        + [f"I_F_{m}" for m in range(1, n + 1)]
        + [f"I_q_{k}" for k in range(1, n + 1)],
        [traj.times] + frag_cols + qubit_cols,
    )
    return [path]


def _run_sm_discord(config: ScenarioConfig, out_dir: str) -> list:
    traj = run_trajectory(
        config.params(), config.t_max, config.n_steps, threads=config.threads
    )
    points = locate_points(traj)
    layout = traj.params.layout
    ms = np.arange(1, layout.n_per_chain + 1)
    written = []
    for label, idx in (("A", points.index_a), ("B", points.index_b), ("C", points.index_c)):
        psi = traj.states_plus[idx]
        info = np.empty(ms.shape[0])
        chi = np.empty(ms.shape[0])
        for j, m in enumerate(ms):
            info[j] = mutual_information(psi, layout, int(m))
            chi[j] = maximize_holevo(psi, layout, int(m)).value
        disc = info - chi
        meta = _base_metadata(config)
        meta.update(_points_metadata(points))
        meta["evaluated_at"] = f"t_{label} = {_fmt(traj.times[idx])}"
        path = os.path.join(out_dir, f"sm_discord_{label}.csv")
        write_csv(
            path,
            meta,
            ["m", "discord", "mutual_information", "holevo_max"],
            [ms, disc, info, chi],
        )
        written.append(path)
    return written


_RUNNERS = {
    "fig2": _run_fig2,
    "custom": _run_fig2,
    "fig3": _run_fig3,
    "sm_inequality": _run_sm_inequality,
    "sm_sweep_je": _run_sweep,
    "sm_sweep_jse": _run_sweep,
    "sm_mi_time": _run_sm_mi_time,
    "sm_discord": _run_sm_discord,
}


def run_scenario(config: ScenarioConfig) -> list:
    """Run one scenario and return the list of files written."""
    os.makedirs(config.out_dir, exist_ok=True)
    return _RUNNERS[config.scenario](config, config.out_dir)
