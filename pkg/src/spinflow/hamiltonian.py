"""Model Hamiltonian as Pauli-string terms plus a matrix-free kernel.

The model couples the system qubit to the head of each chain,

    J_SE * sum_{chain} ( 2 Z.Z + X.X + Y.Y ),

and neighbouring chain qubits to each other,

    J_E * sum_{chain} sum_k ( 2 Z.Z - X.X - Y.Y ).

Coefficients are stored with J_E factored out (H / J_E), so the evolution
grid is directly in dimensionless time t = J_E * tau.  The physical value
of J_E is kept only as metadata for axis labelling.

``build_terms`` produces the term list; ``compile_terms`` turns any list of
Pauli strings into a flat application plan (a diagonal vector plus one
bit-flip mask and amplitude vector per distinct X/Y flip pattern) that the
selected kernel backend evaluates as

    out[i ^ mask] += amp[i] * psi[i].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .qreg import SIGMA_X, SIGMA_Y, SIGMA_Z, IDENTITY_2, QubitLayout

_PAULI_MATS = {"X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}

DENSE_QUBIT_LIMIT = 12  # guard against accidental 2^15-squared allocations


@dataclass(frozen=True)
class ModelParams:
    """Physics knobs: register layout and the two coupling rates."""

    layout: QubitLayout
    j_se: float
    j_e: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.j_se) and np.isfinite(self.j_e)):
            raise ValueError("couplings must be finite")
        if self.j_e <= 0:
            raise ValueError(f"j_e must be > 0, got {self.j_e}")
        if self.j_se < 0:
            raise ValueError(f"j_se must be >= 0, got {self.j_se}")

    @property
    def ratio(self) -> float:
        return self.j_se / self.j_e


@dataclass(frozen=True)
class PauliTerm:
    """One real-coefficient Pauli string; identity on every unlisted qubit."""

    coefficient: float
    ops: tuple[tuple[int, str], ...]  # ((qubit, 'X'|'Y'|'Z'), ...), qubit-sorted

    def __post_init__(self):
        if not np.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")
        qubits = [q for q, _ in self.ops]
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"repeated qubit in Pauli string {self.ops}")
        for q, axis in self.ops:
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
            if axis not in _PAULI_MATS:
                raise ValueError(f"unknown Pauli axis {axis!r}")
        object.__setattr__(self, "ops", tuple(sorted(self.ops)))


def _pair(coeff: float, qa: int, axis_a: str, qb: int, axis_b: str) -> PauliTerm:
    return PauliTerm(coeff, ((qa, axis_a), (qb, axis_b)))


def build_terms(params: ModelParams) -> list[PauliTerm]:
    """Term list of the full Hamiltonian, in units of J_E.

    Order is fixed for run-to-run reproducibility: system-chain couplings
    first (chain a, then b), then intra-chain bonds by (chain, k).
    Total count is 6N for chains of N qubits.
    """
    lay = params.layout
    n = lay.n_per_chain
    r = params.ratio
    terms = []
    for chain in ("a", "b"):
        head = lay.chain_qubit(chain, 1)
        terms.append(_pair(2.0 * r, 0, "Z", head, "Z"))
        terms.append(_pair(r, 0, "X", head, "X"))
        terms.append(_pair(r, 0, "Y", head, "Y"))
    for chain in ("a", "b"):
        for k in range(1, n):
            qa = lay.chain_qubit(chain, k)
            qb = lay.chain_qubit(chain, k + 1)
            terms.append(_pair(2.0, qa, "Z", qb, "Z"))
            terms.append(_pair(-1.0, qa, "X", qb, "X"))
            terms.append(_pair(-1.0, qa, "Y", qb, "Y"))
    return terms


def spectral_bound(terms) -> float:
    """Sum of |coefficients|: a rigorous upper bound on the operator norm."""
    return float(sum(abs(t.coefficient) for t in terms))


@dataclass
class TermPlan:
    """Flattened form of a term list, consumed by the kernel backends."""

    n_qubits: int
    diag: np.ndarray  # float64[dim], all Z-only strings
    masks: np.ndarray  # uint64[n_masks], distinct X/Y flip patterns
    amps: list  # per mask: float64 or complex128 [dim]
    coeff_abs_sum: float = 0.0
    _scratch: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def apply(self, psi: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        """Matrix-free H @ psi through the selected kernel backend."""
        psi = np.ascontiguousarray(psi, dtype=complex)
        if psi.shape != (self.dim,):
            raise ValueError(f"state length {psi.shape} does not match 2^{self.n_qubits}")
        if out is None:
            out = np.empty_like(psi)
        if self._scratch is None:
            self._scratch = np.empty_like(psi)
        _kernels.apply_plan(self, psi, out, self._scratch)
        return out


def compile_terms(terms, n_qubits: int) -> TermPlan:
    """Precompute per-mask amplitude vectors for a list of Pauli strings.

    For a string with X on set Sx, Y on Sy and Z on Sz acting on basis
    state |b>:

        H_term |b> = coeff * i^{|Sy|} * (-1)^{popcount(b & (mY|mZ))} |b ^ (mX|mY)>

    Strings sharing a flip mask are merged into a single amplitude vector.
    Mask order is first-appearance order, so results are reproducible.
    """
    dim = 1 << n_qubits
    idx = np.arange(dim, dtype=np.uint64)
    diag = np.zeros(dim, dtype=float)
    amp_by_mask: dict[int, np.ndarray] = {}
    order: list[int] = []
    for term in terms:
        mx = my = mz = 0
        n_y = 0
        for q, axis in term.ops:
            if q >= n_qubits:
                raise ValueError(f"qubit {q} outside register of {n_qubits}")
            bit = 1 << q
            if axis == "X":
                mx |= bit
            elif axis == "Y":
                my |= bit
                n_y += 1
            else:
                mz |= bit
        parity = np.bitwise_count(idx & np.uint64(my | mz)).astype(np.int64) & 1
        signs = 1.0 - 2.0 * parity
        amp = term.coefficient * (1j**n_y) * signs
        flip = mx | my
        if flip == 0:
            diag += amp.real  # Z-only strings are real
        else:
            if flip not in amp_by_mask:
                amp_by_mask[flip] = np.zeros(dim, dtype=complex)
                order.append(flip)
            amp_by_mask[flip] += amp
    amps = []
    for mask in order:
        a = amp_by_mask[mask]
        amps.append(np.ascontiguousarray(a.real) if np.all(a.imag == 0.0) else a)
    return TermPlan(
        n_qubits=n_qubits,
        diag=diag,
        masks=np.array(order, dtype=np.uint64),
        amps=amps,
        coeff_abs_sum=spectral_bound(terms),
    )


def apply_terms(terms, psi: np.ndarray, n_qubits: int | None = None) -> np.ndarray:
    """One-shot H @ psi for a term list (compiles a throwaway plan)."""
    if n_qubits is None:
        n_qubits = int(np.asarray(psi).shape[0]).bit_length() - 1
    psi = np.asarray(psi)
    if psi.shape != (1 << n_qubits,):
        raise ValueError(f"state length {psi.shape[0]} is not 2^{n_qubits}")
    return compile_terms(terms, n_qubits).apply(psi)


def dense_from_terms(terms, n_qubits: int) -> np.ndarray:
    """Dense matrix sum of the term list (testing oracle, small registers only)."""
    if n_qubits > DENSE_QUBIT_LIMIT:
        raise ValueError(
            f"dense matrix refused for {n_qubits} qubits (limit {DENSE_QUBIT_LIMIT})"
        )
    dim = 1 << n_qubits
    h = np.zeros((dim, dim), dtype=complex)
    for term in terms:
        mats = [IDENTITY_2] * n_qubits
        for q, axis in term.ops:
            if q >= n_qubits:
                raise ValueError(f"qubit {q} outside register of {n_qubits}")
            mats[q] = _PAULI_MATS[axis]
        op = np.eye(1, dtype=complex)
        # little-endian: qubit 0 is the fastest index, i.e. the last kron factor
        for k in range(n_qubits - 1, -1, -1):
            op = np.kron(op, mats[k])
        h += term.coefficient * op
    return h


def build_dense(params: ModelParams) -> np.ndarray:
    """Dense model Hamiltonian in units of J_E (small registers only)."""
    return dense_from_terms(build_terms(params), params.layout.total_qubits)
