"""Qubit register conventions, state containers and Bloch-vector helpers.

Layout of the 2N+1 qubit register:

    index 0            system qubit
    indices 1 .. N     chain a, ordered outward from the system
    indices N+1 .. 2N  chain b, ordered outward from the system

Basis indices are little-endian: bit k of a basis-state integer holds the
state of qubit k, with bit value 0 <-> |0> (sigma_z eigenvalue +1) and bit
value 1 <-> |1> (sigma_z eigenvalue -1).  This makes single-qubit partial
traces stride-friendly.

States are plain complex128 vectors of length 2^(2N+1); density operators
on subsets get a small container (`DensityOp`) that carries either a dense
Hermitian matrix or a low-rank factor B with rho = B B^dagger.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SYSTEM = 0  # global index of the system qubit

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class QubitLayout:
    """Indexing for one system qubit plus two chains of ``n_per_chain`` qubits."""

    n_per_chain: int

    def __post_init__(self):
        if self.n_per_chain < 1:
            raise ValueError(f"n_per_chain must be >= 1, got {self.n_per_chain}")

    @property
    def total_qubits(self) -> int:
        return 2 * self.n_per_chain + 1

    @property
    def dimension(self) -> int:
        return 1 << self.total_qubits

    def chain_qubit(self, chain: str, k: int) -> int:
        """Global index of element k = 1..N of chain 'a' or 'b'."""
        if not 1 <= k <= self.n_per_chain:
            raise ValueError(f"chain position k={k} outside 1..{self.n_per_chain}")
        if chain == "a":
            return k
        if chain == "b":
            return self.n_per_chain + k
        raise ValueError(f"unknown chain {chain!r}, expected 'a' or 'b'")

    def environment(self) -> tuple[int, ...]:
        """All environment qubits, chain a first."""
        return tuple(range(1, self.total_qubits))

    def fragment(self, m: int) -> tuple[int, ...]:
        """Fragment built from elements k = 1..m of both chains (2m qubits)."""
        if not 0 <= m <= self.n_per_chain:
            raise ValueError(f"fragment size m={m} outside 0..{self.n_per_chain}")
        return tuple(self.chain_qubit("a", k) for k in range(1, m + 1)) + tuple(
            self.chain_qubit("b", k) for k in range(1, m + 1)
        )


def make_initial_states(layout: QubitLayout) -> tuple[np.ndarray, np.ndarray]:
    """Conditional initial states |+> x |0...0> and |-> x |0...0>.

    Under the little-endian bit convention both states have support only on
    basis indices 0 and 1 (system bit 0 and 1, every chain qubit in |0>).
    """
    amp = 1.0 / np.sqrt(2.0)
    psi_plus = np.zeros(layout.dimension, dtype=complex)
    psi_minus = np.zeros(layout.dimension, dtype=complex)
    psi_plus[0] = amp
    psi_plus[1] = amp
    psi_minus[0] = amp
    psi_minus[1] = -amp
    return psi_plus, psi_minus


class DensityOp:
    """Hermitian trace-1 operator on an ordered qubit subset.

    Exactly one of ``dense`` (Hermitian matrix) or ``factor`` (matrix B with
    rho = B B^dagger, number of columns = rank bound) is stored.
    """

    __slots__ = ("qubits", "dense", "factor")

    def __init__(self, qubits, dense=None, factor=None):
        if (dense is None) == (factor is None):
            raise ValueError("exactly one of dense/factor must be given")
        self.qubits = tuple(qubits)
        self.dense = dense
        self.factor = factor
        dim = 1 << len(self.qubits)
        mat = dense if dense is not None else factor
        if mat.shape[0] != dim:
            raise ValueError(
                f"operator dimension {mat.shape[0]} does not match "
                f"{len(self.qubits)} qubits"
            )

    @classmethod
    def from_dense(cls, qubits, matrix) -> "DensityOp":
        return cls(qubits, dense=np.asarray(matrix, dtype=complex))

    @classmethod
    def from_factor(cls, qubits, b) -> "DensityOp":
        return cls(qubits, factor=np.asarray(b, dtype=complex))

    @property
    def is_factored(self) -> bool:
        return self.factor is not None

    @property
    def rank_bound(self) -> int:
        if self.factor is not None:
            return self.factor.shape[1]
        return self.dense.shape[0]

    @property
    def dim(self) -> int:
        return 1 << len(self.qubits)

    def to_dense(self) -> np.ndarray:
        if self.dense is not None:
            return self.dense
        return self.factor @ self.factor.conj().T

    def trace(self) -> float:
        if self.dense is not None:
            return float(np.trace(self.dense).real)
        # tr(B B^dag) = sum |B_ij|^2
        return float(np.sum(np.abs(self.factor) ** 2))

    def validate(self, atol: float = 1e-10) -> None:
        """Raise if the Hermiticity / positivity / trace invariants fail."""
        rho = self.to_dense()
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > atol:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > atol:
            raise ValueError(f"trace {tr!r} differs from 1")
        evals = np.linalg.eigvalsh(rho)
        if evals.min() < -atol:
            raise ValueError(f"negative eigenvalue {evals.min():.3e}")


def bloch_of(rho) -> np.ndarray:
    """Bloch vector (Tr rho sx, Tr rho sy, Tr rho sz) of a one-qubit state."""
    if isinstance(rho, DensityOp):
        rho = rho.to_dense()
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 density matrix, got shape {rho.shape}")
    x = np.trace(rho @ SIGMA_X).real
    y = np.trace(rho @ SIGMA_Y).real
    z = np.trace(rho @ SIGMA_Z).real
    return np.array([x, y, z])


def density_from_bloch(r) -> np.ndarray:
    """Reconstruct rho = (I + r . sigma) / 2 from a Bloch vector."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"expected a length-3 Bloch vector, got shape {r.shape}")
    return 0.5 * (IDENTITY_2 + r[0] * SIGMA_X + r[1] * SIGMA_Y + r[2] * SIGMA_Z)
