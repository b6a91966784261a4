# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernel: one gather-scatter XOR loop per flip mask.

Semantics are identical to the numpy fallback in ``pure``:

    out = diag * psi
    out[i ^ mask] += amp[i] * psi[i]    for every (mask, amp) pass

The loops drop the GIL, so the two conditional trajectories can make
real use of a second worker thread.
"""

import numpy as np


cdef void _diag_pass(const double[::1] diag, const double complex[::1] psi,
                     double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t i, n = psi.shape[0]
    for i in range(n):
        out[i] = diag[i] * psi[i]


cdef void _flip_real(const double[::1] amp, const double complex[::1] psi,
                     double complex[::1] out, Py_ssize_t mask) noexcept nogil:
    cdef Py_ssize_t i, n = psi.shape[0]
    for i in range(n):
        out[i ^ mask] = out[i ^ mask] + amp[i] * psi[i]


cdef void _flip_complex(const double complex[::1] amp,
                        const double complex[::1] psi,
                        double complex[::1] out, Py_ssize_t mask) noexcept nogil:
    cdef Py_ssize_t i, n = psi.shape[0]
    for i in range(n):
        out[i ^ mask] = out[i ^ mask] + amp[i] * psi[i]


def apply_plan(plan, psi, out, scratch):
    """Evaluate a compiled term plan; ``scratch`` is unused here."""
    cdef const double complex[::1] psi_v = psi
    cdef double complex[::1] out_v = out
    cdef const double[::1] diag_v = plan.diag
    cdef const double[::1] amp_r
    cdef const double complex[::1] amp_c
    cdef Py_ssize_t mask
    with nogil:
        _diag_pass(diag_v, psi_v, out_v)
    for mask_obj, amp in zip(plan.masks, plan.amps):
        mask = <Py_ssize_t> mask_obj
        if amp.dtype == np.complex128:
            amp_c = amp
            with nogil:
                _flip_complex(amp_c, psi_v, out_v, mask)
        else:
            amp_r = amp
            with nogil:
                _flip_real(amp_r, psi_v, out_v, mask)
    return out
