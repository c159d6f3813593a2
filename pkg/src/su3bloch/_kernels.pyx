# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: fixed-step RK4 for linear systems and subset-norm drift."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _matvec(const double[:, ::1] m, const double* x, double* out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc = acc + m[i, j] * x[j]
        out[i] = acc


def rk4_linear(const double[:, ::1] m, const double[::1] s0, double dt, Py_ssize_t n_steps):
    """Classic RK4 for ``ds/dt = m @ s``; returns the ``(n_steps + 1, n)`` trajectory."""
    cdef Py_ssize_t n = s0.shape[0]
    if m.shape[0] != n or m.shape[1] != n:
        raise ValueError("generator and state dimensions differ")
    out_arr = np.empty((n_steps + 1, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    work_arr = np.empty((6, n), dtype=np.float64)
    cdef double[:, ::1] w = work_arr
    cdef double* s = &w[0, 0]
    cdef double* k1 = &w[1, 0]
    cdef double* k2 = &w[2, 0]
    cdef double* k3 = &w[3, 0]
    cdef double* k4 = &w[4, 0]
    cdef double* tmp = &w[5, 0]
    cdef Py_ssize_t step, i
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    for i in range(n):
        s[i] = s0[i]
        out[0, i] = s0[i]
    with nogil:
        for step in range(1, n_steps + 1):
            _matvec(m, s, k1, n)
            for i in range(n):
                tmp[i] = s[i] + half * k1[i]
            _matvec(m, tmp, k2, n)
            for i in range(n):
                tmp[i] = s[i] + half * k2[i]
            _matvec(m, tmp, k3, n)
            for i in range(n):
                tmp[i] = s[i] + dt * k3[i]
            _matvec(m, tmp, k4, n)
            for i in range(n):
                s[i] = s[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                out[step, i] = s[i]
    return out_arr


def subset_deviations(const double[:, ::1] states, const cnp.int64_t[::1] masks):
    """Max over samples of ``|sum_{i in A} s_i(t)^2 - s_i(0)^2|`` for each bitmask ``A``.

    For up to 16 components every subset sum is built per sample from the sum of
    the subset without its top bit (one addition each), then looked up by mask.
    """
    cdef Py_ssize_t n_t = states.shape[0]
    cdef Py_ssize_t n = states.shape[1]
    cdef Py_ssize_t n_sub = masks.shape[0]
    if n > 62:
        raise ValueError("at most 62 components supported")
    dev_arr = np.zeros(n_sub, dtype=np.float64)
    cdef double[::1] dev = dev_arr
    drift_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] drift = drift_arr
    cdef bint table = n <= 16
    cdef Py_ssize_t n_table = (1 << n) if table else 1
    sums_arr = np.zeros(n_table, dtype=np.float64)
    cdef double[::1] sums = sums_arr
    cdef Py_ssize_t t, i, a, m, top
    cdef double acc
    cdef cnp.int64_t mask
    with nogil:
        for t in range(n_t):
            for i in range(n):
                drift[i] = states[t, i] * states[t, i] - states[0, i] * states[0, i]
            if table:
                top = 0
                for m in range(1, n_table):
                    if m == (<Py_ssize_t>1 << (top + 1)):
                        top = top + 1
                    sums[m] = sums[m ^ (<Py_ssize_t>1 << top)] + drift[top]
            for a in range(n_sub):
                mask = masks[a]
                if table and mask < n_table:
                    acc = sums[mask]
                else:
                    acc = 0.0
                    for i in range(n):
                        if (mask >> i) & 1:
                            acc = acc + drift[i]
                if acc < 0:
                    acc = -acc
                if acc > dev[a]:
                    dev[a] = acc
    return dev_arr
