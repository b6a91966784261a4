"""Numpy fallback kernel.

A term plan is a diagonal vector plus (mask, amplitude-vector) passes with

    out[i ^ mask] += amp[i] * psi[i].

Flipping the bits in ``mask`` is a reversal along the matching axes of the
state reshaped to (2,)*n, so each pass is a vectorised flip-accumulate and
no index arrays are needed.
"""

import numpy as np


def _flip_axes(mask: int, n_qubits: int) -> tuple[int, ...]:
    # C-order reshape puts qubit k on axis n-1-k
    return tuple(n_qubits - 1 - k for k in range(n_qubits) if (mask >> k) & 1)


def apply_plan(plan, psi, out, scratch):
    n = plan.n_qubits
    shape = (2,) * n
    np.multiply(plan.diag, psi, out=out)
    out_view = out.reshape(shape)
    for mask, amp in zip(plan.masks, plan.amps):
        np.multiply(amp, psi, out=scratch)
        out_view += np.flip(scratch.reshape(shape), axis=_flip_axes(int(mask), n))
    return out
