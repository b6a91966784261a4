"""Exact dynamics of a qubit between two finite spin chains.

A single system qubit sits between two chains of N qubits each. The
package evolves the two conditional global states exactly, matrix-free,
and extracts the information-flow story: trace-distance revivals,
environment transport, the data-processing bound on backflow, fragment
mutual information, Holevo information, and discord.

Modules: qreg (register layout and state containers), hamiltonian
(Pauli-term model and matrix-free application), evolve (Krylov
propagation and trajectories), reduce (partial traces and entropies),
measures (information functionals), experiments (scenarios and CSV),
cli (the `simulate` entry point).
"""

from ._kernels import available_backends, backend_name
from .evolve import (
    PropagationError,
    Trajectory,
    load_trajectory,
    propagate,
    run_trajectory,
    save_trajectory,
)
from .experiments import (
    ConfigError,
    PlateauError,
    PointsABC,
    ScenarioConfig,
    locate_points,
    parse_config,
    run_scenario,
)
from .hamiltonian import (
    ModelParams,
    PauliTerm,
    TermPlan,
    apply_terms,
    build_dense,
    build_terms,
    compile_terms,
    dense_from_terms,
    spectral_bound,
)
from .measures import (
    HolevoResult,
    MeasurementSetting,
    Series,
    blp_accumulated,
    discord,
    env_distance_series,
    env_qubit_distance_series,
    holevo,
    laine_terms,
    maximize_holevo,
    mutual_information,
    sigma,
    subset_mutual_information,
    system_distance_series,
    trace_distance,
    trace_distance_lowrank,
)
from .qreg import (
    DensityOp,
    QubitLayout,
    bloch_of,
    density_from_bloch,
    make_initial_states,
)
from .reduce import (
    bipartition_matrix,
    entropy_of_subset,
    env_factor,
    factored_reduction,
    partial_trace,
    reduced_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "available_backends",
    "backend_name",
    "PropagationError",
    "Trajectory",
    "load_trajectory",
    "propagate",
    "run_trajectory",
    "save_trajectory",
    "ConfigError",
    "PlateauError",
    "PointsABC",
    "ScenarioConfig",
    "locate_points",
    "parse_config",
    "run_scenario",
    "ModelParams",
    "PauliTerm",
    "TermPlan",
    "apply_terms",
    "build_dense",
    "build_terms",
    "compile_terms",
    "dense_from_terms",
    "spectral_bound",
    "HolevoResult",
    "MeasurementSetting",
    "Series",
    "blp_accumulated",
    "discord",
    "env_distance_series",
    "env_qubit_distance_series",
    "holevo",
    "laine_terms",
    "maximize_holevo",
    "mutual_information",
    "sigma",
    "subset_mutual_information",
    "system_distance_series",
    "trace_distance",
    "trace_distance_lowrank",
    "DensityOp",
    "QubitLayout",
    "bloch_of",
    "density_from_bloch",
    "make_initial_states",
    "bipartition_matrix",
    "entropy_of_subset",
    "env_factor",
    "factored_reduction",
    "partial_trace",
    "reduced_spectrum",
    "__version__",
]
