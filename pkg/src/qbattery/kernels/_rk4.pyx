# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled RK4 propagation kernel; mirrors ``_rk4_py.propagate_rk4``."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND = "cython"


def propagate_rk4(h_steps, psi0, double dt, int renorm_every=64):
    """Fixed-step RK4 for i dpsi/dt = H(t) psi on per-step sample triplets.

    Same contract as the pure-Python kernel: h_steps has shape (3n, d, d)
    laid out as (start, midpoint, end) per step; returns (states, max_drift)
    with states at the full grid points and the maximum pre-renormalization
    norm deviation.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=3, mode="c"] h = \
        np.ascontiguousarray(h_steps, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] psi = \
        np.array(psi0, dtype=np.complex128)
    cdef Py_ssize_t n = h.shape[0] // 3
    cdef Py_ssize_t d = psi.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] out = \
        np.empty((n + 1, d), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] k1 = np.empty(d, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] k2 = np.empty(d, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] k3 = np.empty(d, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] k4 = np.empty(d, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] tmp = np.empty(d, np.complex128)
    cdef double max_drift = 0.0, norm, drift
    cdef double complex minus_i = -1j
    cdef Py_ssize_t k, i, j
    cdef double complex acc

    for i in range(d):
        out[0, i] = psi[i]

    for k in range(n):
        # k1 = -i H(t+) psi
        for i in range(d):
            acc = 0
            for j in range(d):
                acc += h[3 * k, i, j] * psi[j]
            k1[i] = minus_i * acc
        # k2 = -i H(t + dt/2) (psi + dt/2 k1)
        for i in range(d):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        for i in range(d):
            acc = 0
            for j in range(d):
                acc += h[3 * k + 1, i, j] * tmp[j]
            k2[i] = minus_i * acc
        # k3 = -i H(t + dt/2) (psi + dt/2 k2)
        for i in range(d):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        for i in range(d):
            acc = 0
            for j in range(d):
                acc += h[3 * k + 1, i, j] * tmp[j]
            k3[i] = minus_i * acc
        # k4 = -i H((t + dt)-) (psi + dt k3)
        for i in range(d):
            tmp[i] = psi[i] + dt * k3[i]
        for i in range(d):
            acc = 0
            for j in range(d):
                acc += h[3 * k + 2, i, j] * tmp[j]
            k4[i] = minus_i * acc

        norm = 0.0
        for i in range(d):
            psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            norm += psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
        norm = sqrt(norm)
        drift = fabs(norm - 1.0)
        if drift > max_drift:
            max_drift = drift
        if renorm_every and (k + 1) % renorm_every == 0:
            for i in range(d):
                psi[i] = psi[i] / norm
        for i in range(d):
            out[k + 1, i] = psi[i]

    return out, max_drift
