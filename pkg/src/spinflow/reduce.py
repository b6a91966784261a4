"""Partial traces, low-rank reductions and subset entropies of pure states.

Everything here exploits global purity.  Reshaping a pure state into a
matrix M with rows indexed by a qubit subset and columns by its complement
gives the reduced state on the subset as M M^dagger; the complement shares
the same nonzero spectrum (Schmidt duality), so entropies are always
computed on the smaller side and the reduced state of a large subset never
has to be materialised.
"""

from __future__ import annotations

import numpy as np

from .qreg import DensityOp, QubitLayout

EIG_CLIP = 1e-12  # eigenvalues below this contribute zero entropy


def _check_state(psi: np.ndarray, n_qubits: int) -> np.ndarray:
    psi = np.asarray(psi)
    if psi.shape != (1 << n_qubits,):
        raise ValueError(
            f"state length {psi.shape} does not match {n_qubits} qubits"
        )
    return psi


def _check_subset(keep, n_qubits: int) -> tuple[int, ...]:
    keep = tuple(keep)
    if not keep:
        raise ValueError("qubit subset is empty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"repeated qubit in subset {keep}")
    for q in keep:
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit {q} outside register of {n_qubits}")
    return keep


def bipartition_matrix(psi: np.ndarray, n_qubits: int, keep) -> np.ndarray:
    """Reshape psi into M[r, c]: row bit i is keep[i], columns the complement.

    Row/column bits are little-endian within each group; complement qubits
    stay in ascending order.
    """
    keep = _check_subset(keep, n_qubits)
    psi = _check_state(psi, n_qubits)
    rest = sorted(set(range(n_qubits)) - set(keep))
    # axis of qubit q in the (2,)*n reshape is n-1-q; row bits are the
    # slow indices so keep axes come first, each group most-significant first
    order = [n_qubits - 1 - q for q in reversed(keep)] + [
        n_qubits - 1 - q for q in reversed(rest)
    ]
    return (
        psi.reshape((2,) * n_qubits)
        .transpose(order)
        .reshape(1 << len(keep), 1 << len(rest))
    )


def partial_trace(psi: np.ndarray, keep, n_qubits: int) -> DensityOp:
    """Dense reduced density operator of a pure state on ``keep``."""
    keep = _check_subset(keep, n_qubits)
    if len(keep) == n_qubits:
        raise ValueError("subset must be strictly inside the register")
    m = bipartition_matrix(psi, n_qubits, keep)
    rho = m @ m.conj().T
    rho = 0.5 * (rho + rho.conj().T)  # scrub rounding asymmetry
    return DensityOp.from_dense(keep, rho)


def factored_reduction(psi: np.ndarray, keep, n_qubits: int) -> DensityOp:
    """Reduced state on ``keep`` as a factor B with rho = B B^dagger.

    The rank is bounded by the complement dimension, so tracing out few
    qubits from a pure state stays cheap at any register size.
    """
    return DensityOp.from_factor(keep, bipartition_matrix(psi, n_qubits, keep))


def env_factor(psi: np.ndarray, layout: QubitLayout) -> DensityOp:
    """Environment reduced state of the full register, rank <= 2."""
    return factored_reduction(psi, layout.environment(), layout.total_qubits)


def reduced_spectrum(psi: np.ndarray, subset, n_qubits: int) -> np.ndarray:
    """Eigenvalues of the reduced state on ``subset``, from the smaller side."""
    subset = _check_subset(subset, n_qubits)
    if len(subset) == n_qubits:
        return np.array([1.0])
    if len(subset) > n_qubits - len(subset):
        subset = tuple(sorted(set(range(n_qubits)) - set(subset)))
    m = bipartition_matrix(psi, n_qubits, subset)
    gram = m @ m.conj().T
    return np.linalg.eigvalsh(gram)


def entropy_of_subset(psi: np.ndarray, subset, n_qubits: int) -> float:
    """Von Neumann entropy (bits) of the reduced state on ``subset``.

    Eigenvalues are clipped to [0, 1] with threshold 1e-12 before the log;
    a subset spanning the whole register returns 0 (the state is pure).
    """
    evals = reduced_spectrum(psi, subset, n_qubits)
    p = np.minimum(evals[evals > EIG_CLIP], 1.0)
    if p.size == 0:
        return 0.0
    return float(-np.sum(p * np.log2(p)))
