"""Dense complex matrix arithmetic: Hermitian eigendecomposition via cyclic
Jacobi, tensor/partial-trace calculus, PSD square roots, and Hermitian
operator orthonormal bases."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, tolerances as tol
from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    NoConvergence,
    NotHermitian,
    NotPSD,
    UnsupportedDimension,
)


def as_matrix(a) -> np.ndarray:
    """Coerce to a C-ordered complex square matrix."""
    m = np.ascontiguousarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def hermitianize(a: np.ndarray) -> np.ndarray:
    """Nearest Hermitian matrix, (A + A')/2."""
    return 0.5 * (a + a.conj().T)


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (real, descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eigh(h) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Cyclic complex Jacobi with a 100-sweep cap; the input is symmetrized
    before iterating so round-off asymmetry cannot leak into the rotations.
    Raises NotHermitian when the input fails the Hermiticity gate and
    NoConvergence if the sweep cap is exhausted.
    """
    h = as_matrix(h)
    scale = max(1.0, frobenius(h))
    if frobenius(h - h.conj().T) > tol.HERMITICITY_RTOL * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, v, converged = _kernels.jacobi_eigh(
        hermitianize(h), tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL
    )
    if not converged:
        raise NoConvergence(
            f"Jacobi sweep cap {tol.JACOBI_SWEEP_CAP} exhausted at dim {h.shape[0]}"
        )
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(
        np.ascontiguousarray(w[order]), np.ascontiguousarray(v[:, order])
    )


def tensor(a, b, cap: int = tol.DIM_CAP) -> np.ndarray:
    """Kronecker product with a dimension cap (default 64)."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] * b.shape[0] > cap:
        raise DimensionOverflow(
            f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds cap {cap}"
        )
    return np.kron(a, b)


def partial_trace(m, d_a: int, d_b: int, keep: str) -> np.ndarray:
    """Trace out one tensor factor of an operator on C^{d_a} (x) C^{d_b}."""
    m = as_matrix(m)
    if m.shape[0] != d_a * d_b:
        raise DimensionMismatch(
            f"matrix dim {m.shape[0]} != d_a*d_b = {d_a * d_b}"
        )
    r = m.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.ascontiguousarray(np.einsum("ibjb->ij", r))
    if keep == "B":
        return np.ascontiguousarray(np.einsum("aiaj->ij", r))
    raise DimensionMismatch(f"keep must be 'A' or 'B', got {keep!r}")


def sqrt_psd(m) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in [-EIGENVALUE_CLAMP, 0) are clamped to zero; anything
    more negative raises NotPSD rather than masking an invalid state.
    The square root amplifies eigenvalue noise near zero to sqrt scale
    (1e-16 dust becomes 1e-8), so tiny positives go through the same
    effective_spectrum hygiene as spectra elsewhere.
    """
    dec = eigh(m)
    w = dec.eigenvalues
    if w.min(initial=0.0) < -tol.EIGENVALUE_CLAMP:
        raise NotPSD(f"eigenvalue {w.min()} below -{tol.EIGENVALUE_CLAMP}")
    root = np.sqrt(effective_spectrum(w))
    v = dec.eigenvectors
    return hermitianize((v * root) @ v.conj().T)


def hermitian_operator_basis(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann basis: d^2 Hermitian matrices, Tr(G_i G_j) = delta_ij.

    Ordering: I/sqrt(d) first, then symmetric pairs (E_ij+E_ji)/sqrt(2) for
    i<j, antisymmetric pairs -i(E_ij-E_ji)/sqrt(2) for i<j (the sigma_y
    convention), and the d-1 normalized diagonal traceless matrices.
    """
    if not 2 <= d <= 8:
        raise UnsupportedDimension(f"operator basis supported for 2 <= d <= 8, got {d}")
    out = [np.eye(d, dtype=np.complex128) / np.sqrt(d)]
    for i in range(d):
        for j in range(i + 1, d):
            g = np.zeros((d, d), dtype=np.complex128)
            g[i, j] = g[j, i] = 1.0 / np.sqrt(2.0)
            out.append(g)
    for i in range(d):
        for j in range(i + 1, d):
            g = np.zeros((d, d), dtype=np.complex128)
            g[i, j] = -1j / np.sqrt(2.0)
            g[j, i] = 1j / np.sqrt(2.0)
            out.append(g)
    for l in range(1, d):
        g = np.zeros((d, d), dtype=np.complex128)
        g[np.arange(l), np.arange(l)] = 1.0
        g[l, l] = -float(l)
        out.append(g / np.sqrt(l * (l + 1.0)))
    return out


def validate_density(rho: np.ndarray, decomposition: SpectralDecomposition) -> None:
    """Raise if rho fails the density-matrix invariants."""
    if frobenius(rho - rho.conj().T) > tol.DENSITY_HERMITIAN_TOL:
        raise NotHermitian("density matrix is not Hermitian within 1e-10")
    if abs(np.trace(rho).real - 1.0) > tol.DENSITY_TRACE_TOL or abs(
        np.trace(rho).imag
    ) > tol.DENSITY_TRACE_TOL:
        raise NotPSD(f"density matrix trace {np.trace(rho)} != 1")
    if decomposition.eigenvalues.min() < -tol.EIGENVALUE_CLAMP:
        raise NotPSD(
            f"density matrix eigenvalue {decomposition.eigenvalues.min()} < -1e-10"
        )


def effective_spectrum(eigenvalues: np.ndarray) -> np.ndarray:
    """Clamp round-off negatives to zero and zero out sub-support dust.

    Eigenvalues below the support cutoff are indistinguishable from exact
    zeros of the underlying state, and kernels with square-root behavior
    near zero would amplify such dust to O(sqrt(eps)) — far above the
    working tolerances.  Every spectrum-consuming formula routes through
    this one cleaning step so paired quantities stay exactly consistent.
    """
    w = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    return np.where(w > tol.SUPPORT_CUTOFF, w, 0.0)


def clamped_spectrum(decomposition: SpectralDecomposition) -> np.ndarray:
    """Effective spectrum of a decomposition: negatives clamped, dust zeroed."""
    return effective_spectrum(decomposition.eigenvalues)


def matrix_to_json_dict(m: np.ndarray) -> dict:
    """Library-wide matrix JSON schema: {"dim", "re", "im"}."""
    m = as_matrix(m)
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json_dict(obj: dict) -> np.ndarray:
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise DimensionMismatch(
            f"matrix JSON arrays have shape {re.shape}/{im.shape}, expected ({dim}, {dim})"
        )
    return re + 1j * im
