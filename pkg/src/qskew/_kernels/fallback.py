"""Pure-NumPy kernel implementations.

Algorithmically identical to the compiled extension in ``_core.pyx``; the
two backends must agree to round-off on every input.  Kept dependency-free
beyond numpy so the package works without a C toolchain.
"""
from __future__ import annotations

import math

import numpy as np


def _off_norm(a: np.ndarray) -> float:
    d = a.shape[0]
    off2 = np.abs(a) ** 2
    off2[np.arange(d), np.arange(d)] = 0.0
    return math.sqrt(float(off2.sum()))


def jacobi_eigh(h: np.ndarray, sweep_cap: int, off_tol_rel: float):
    """Cyclic complex Jacobi diagonalization.

    Returns (eigenvalues, eigenvectors, converged).  Eigenvalues are
    unsorted (diagonal order); eigenvector k is column k.  Each rotation
    first strips the phase of the pivot entry, then applies the classic
    symmetric Schur rotation, in a fixed cyclic pivot order.
    """
    a = np.array(h, dtype=np.complex128, order="C")
    d = a.shape[0]
    v = np.eye(d, dtype=np.complex128)
    if d == 1:
        return a.real.diagonal().copy(), v, True
    threshold = off_tol_rel * float(np.linalg.norm(a))
    converged = False
    for _ in range(sweep_cap):
        if _off_norm(a) <= threshold:
            converged = True
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                absq = abs(apq)
                if absq == 0.0:
                    continue
                phase = apq / absq
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * absq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * np.conj(phase)
                # columns (A <- A J), then rows (A <- J' A)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - sp * col_q
                a[:, q] = s * col_p + c * np.conj(phase) * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                # the 2x2 block is known in closed form; pin it exactly
                a[p, p] = app - t * absq
                a[q, q] = aqq + t * absq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcol_p = v[:, p].copy()
                vcol_q = v[:, q].copy()
                v[:, p] = c * vcol_p - sp * vcol_q
                v[:, q] = s * vcol_p + c * np.conj(phase) * vcol_q
    else:
        converged = _off_norm(a) <= threshold
    return a.real.diagonal().copy(), v, converged


def pair_weighted_abs2_sum(s: np.ndarray, b: np.ndarray) -> float:
    """sum_{k,l} S[k,l] |B[k,l]|^2 for one matrix B."""
    return float(np.einsum("kl,kl->", s, np.abs(b) ** 2))


def pair_weighted_abs2_sum_batch(s: np.ndarray, b: np.ndarray) -> np.ndarray:
    """sum_{k,l} S[k,l] |B[n,k,l]|^2 for a stack of matrices."""
    return np.einsum("kl,nkl->n", s, np.abs(b) ** 2)


def projector_coherence_batch(s: np.ndarray, p: np.ndarray) -> np.ndarray:
    """sum_{k,l,i} S[k,l] P[n,k,i] P[n,l,i] for a stack of probability tables P."""
    return np.einsum("kl,nki,nli->n", s, p, p, optimize=True)
