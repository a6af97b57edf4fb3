"""Mutually unbiased bases: construction for d in {2, 3, 4, 5, 7} and an
unconditional certifier.

d = 2 uses the three Pauli eigenbases; odd primes use the computational
basis plus the d quadratic Weyl bases <j|b_{t,k}> = w^(t j^2 + j k)/sqrt(d)
with w = exp(2 pi i/d) (the quadratic phase needs odd d); d = 4 ships as a
literal table of 20 vectors.  Every family — the literal included — is
certified at construction time, so nothing is trusted blind.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatch, UnsupportedDimension
from .linalg import as_matrix

_ODD_PRIMES = (3, 5, 7)


@dataclass(frozen=True)
class MeasurementBasis:
    """d orthonormal columns; column i defines the projector |b_i><b_i|."""

    dim: int
    vectors: np.ndarray

    def projector(self, i: int) -> np.ndarray:
        v = self.vectors[:, i]
        return np.outer(v, v.conj())


def measurement_basis(vectors) -> MeasurementBasis:
    """Wrap and check an orthonormal column set."""
    v = as_matrix(vectors)
    gram = v.conj().T @ v
    err = np.max(np.abs(gram - np.eye(v.shape[0])))
    if err > tol.MUB_CERT_TOL:
        raise DimensionMismatch(f"columns are not orthonormal (error {err:.3e})")
    return MeasurementBasis(v.shape[0], v)


def computational_basis(d: int) -> MeasurementBasis:
    return MeasurementBasis(d, np.eye(d, dtype=np.complex128))


@dataclass(frozen=True)
class MubFamily:
    dim: int
    bases: tuple[MeasurementBasis, ...]


@dataclass(frozen=True)
class MubCertification:
    max_orthonormality_error: float
    max_unbiasedness_error: float

    @property
    def accepted(self) -> bool:
        return (
            self.max_orthonormality_error <= tol.MUB_CERT_TOL
            and self.max_unbiasedness_error <= tol.MUB_CERT_TOL
        )


def certify_mub(family: MubFamily) -> MubCertification:
    """Report the worst orthonormality and unbiasedness deviations."""
    d = family.dim
    target = 1.0 / np.sqrt(d)
    ortho = 0.0
    unbiased = 0.0
    eye = np.eye(d)
    for b in family.bases:
        gram = b.vectors.conj().T @ b.vectors
        ortho = max(ortho, float(np.max(np.abs(gram - eye))))
    for i in range(len(family.bases)):
        for j in range(i + 1, len(family.bases)):
            overlaps = np.abs(family.bases[i].vectors.conj().T @ family.bases[j].vectors)
            unbiased = max(unbiased, float(np.max(np.abs(overlaps - target))))
    return MubCertification(ortho, unbiased)


# d = 2: sigma_z, sigma_x, sigma_y eigenbases.
_D2_TABLE = (
    ((1, 0), (0, 1)),
    ((0.5**0.5, 0.5**0.5), (0.5**0.5, -(0.5**0.5))),
    ((0.5**0.5, 1j * 0.5**0.5), (0.5**0.5, -1j * 0.5**0.5)),
)

# d = 4: joint eigenvectors of the five commuting two-qubit displacement
# classes, snapped to exact (a+ib)/2 entries.  Certified at load.
_D4_TABLE = (
    (
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    ),
    (
        (0.5, -0.5, -0.5, 0.5),
        (0.5, -0.5, 0.5, -0.5),
        (0.5, 0.5, -0.5, -0.5),
        (0.5, 0.5, 0.5, 0.5),
    ),
    (
        (0.5, -0.5j, -0.5j, -0.5),
        (0.5, -0.5j, 0.5j, 0.5),
        (0.5, 0.5j, -0.5j, 0.5),
        (0.5, 0.5j, 0.5j, -0.5),
    ),
    (
        (0.5, -0.5, -0.5j, -0.5j),
        (0.5, 0.5, -0.5j, 0.5j),
        (0.5, 0.5, 0.5j, -0.5j),
        (0.5, -0.5, 0.5j, 0.5j),
    ),
    (
        (0.5, -0.5j, -0.5, -0.5j),
        (0.5, -0.5j, 0.5, 0.5j),
        (0.5, 0.5j, 0.5, -0.5j),
        (0.5, 0.5j, -0.5, 0.5j),
    ),
)


def _family_from_table(table) -> tuple[MeasurementBasis, ...]:
    bases = []
    for vecs in table:
        m = np.array(vecs, dtype=np.complex128).T  # rows of the table are vectors
        bases.append(MeasurementBasis(m.shape[0], np.ascontiguousarray(m)))
    return tuple(bases)


def _weyl_bases(d: int) -> tuple[MeasurementBasis, ...]:
    j = np.arange(d)
    omega = np.exp(2j * np.pi / d)
    bases = [computational_basis(d)]
    for t in range(d):
        phases = (t * j[:, None] ** 2 + j[:, None] * j[None, :]) % d  # column k
        bases.append(
            MeasurementBasis(d, np.ascontiguousarray(omega**phases / np.sqrt(d)))
        )
    return tuple(bases)


def build_mub_family(d: int) -> MubFamily:
    """A complete family of d+1 mutually unbiased bases, certified."""
    if d == 2:
        bases = _family_from_table(_D2_TABLE)
    elif d in _ODD_PRIMES:
        bases = _weyl_bases(d)
    elif d == 4:
        bases = _family_from_table(_D4_TABLE)
    else:
        raise UnsupportedDimension(
            f"MUB family available for d in {{2, 3, 4, 5, 7}}, got {d}"
        )
    family = MubFamily(d, bases)
    cert = certify_mub(family)
    if not cert.accepted:
        raise UnsupportedDimension(
            f"constructed d={d} family failed certification: {cert}"
        )
    return family


def swap_operator(d: int) -> np.ndarray:
    """The swap F on C^d (x) C^d: F(x (x) y) = y (x) x."""
    f = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def projector_double_sum(family: MubFamily) -> np.ndarray:
    """sum over all bases and vectors of |b><b| (x) |b><b|.

    Equals I (x) I + swap for a complete MUB family.
    """
    d = family.dim
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for b in family.bases:
        for i in range(d):
            pr = b.projector(i)
            out += np.kron(pr, pr)
    return out
