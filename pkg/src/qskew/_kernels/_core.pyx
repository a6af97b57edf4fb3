# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel implementations.

Same algorithms as ``fallback.py``; typed loops instead of vector ops.
"""
import numpy as np

from libc.math cimport copysign, fabs, hypot, sqrt


cdef double _off_norm(double complex[:, ::1] a, Py_ssize_t d) noexcept:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    cdef double complex z
    for i in range(d):
        for j in range(d):
            if i != j:
                z = a[i, j]
                acc += z.real * z.real + z.imag * z.imag
    return sqrt(acc)


def jacobi_eigh(h, Py_ssize_t sweep_cap, double off_tol_rel):
    """Cyclic complex Jacobi diagonalization; see the fallback docstring."""
    a_arr = np.array(h, dtype=np.complex128, order="C")
    cdef Py_ssize_t d = a_arr.shape[0]
    v_arr = np.eye(d, dtype=np.complex128)
    if d == 1:
        return a_arr.real.diagonal().copy(), v_arr, True

    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr
    cdef double threshold = off_tol_rel * float(np.linalg.norm(a_arr))
    cdef bint converged = False
    cdef Py_ssize_t sweep, p, q, i
    cdef double complex apq, phase, phc, colp, colq
    cdef double absq, app, aqq, tau, t, c, s

    for sweep in range(sweep_cap):
        if _off_norm(a, d) <= threshold:
            converged = True
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                absq = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if absq == 0.0:
                    continue
                phase = apq / absq
                phc = phase.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * absq)
                t = copysign(1.0, tau) / (fabs(tau) + hypot(1.0, tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # columns (A <- A J), then rows (A <- J' A)
                for i in range(d):
                    colp = a[i, p]
                    colq = a[i, q]
                    a[i, p] = c * colp - s * phc * colq
                    a[i, q] = s * colp + c * phc * colq
                for i in range(d):
                    colp = a[p, i]
                    colq = a[q, i]
                    a[p, i] = c * colp - s * phase * colq
                    a[q, i] = s * colp + c * phase * colq
                # the 2x2 block is known in closed form; pin it exactly
                a[p, p] = app - t * absq
                a[q, q] = aqq + t * absq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(d):
                    colp = v[i, p]
                    colq = v[i, q]
                    v[i, p] = c * colp - s * phc * colq
                    v[i, q] = s * colp + c * phc * colq
    else:
        converged = _off_norm(a, d) <= threshold
    return a_arr.real.diagonal().copy(), v_arr, converged


def pair_weighted_abs2_sum(s, b):
    """sum_{k,l} S[k,l] |B[k,l]|^2 for one matrix B."""
    cdef double[:, ::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef double complex[:, ::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t d = sv.shape[0], k, l
    cdef double acc = 0.0
    cdef double complex z
    for k in range(d):
        for l in range(d):
            z = bv[k, l]
            acc += sv[k, l] * (z.real * z.real + z.imag * z.imag)
    return acc


def pair_weighted_abs2_sum_batch(s, b):
    """sum_{k,l} S[k,l] |B[n,k,l]|^2 for a stack of matrices."""
    cdef double[:, ::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef double complex[:, :, ::1] bv = np.ascontiguousarray(b, dtype=np.complex128)
    cdef Py_ssize_t n = bv.shape[0], d = sv.shape[0], m, k, l
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc
    cdef double complex z
    for m in range(n):
        acc = 0.0
        for k in range(d):
            for l in range(d):
                z = bv[m, k, l]
                acc += sv[k, l] * (z.real * z.real + z.imag * z.imag)
        out[m] = acc
    return out_arr


def projector_coherence_batch(s, p):
    """sum_{k,l,i} S[k,l] P[n,k,i] P[n,l,i] for a stack of probability tables P."""
    cdef double[:, ::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[:, :, ::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef Py_ssize_t n = pv.shape[0], d = sv.shape[0], ncol = pv.shape[2]
    cdef Py_ssize_t m, k, l, i
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double acc, dot
    for m in range(n):
        acc = 0.0
        for k in range(d):
            for l in range(d):
                dot = 0.0
                for i in range(ncol):
                    dot += pv[m, k, i] * pv[m, l, i]
                acc += sv[k, l] * dot
        out[m] = acc
    return out_arr
