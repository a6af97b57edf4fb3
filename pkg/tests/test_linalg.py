"""Dense linear-algebra layer: eigensolver, products, square roots, bases."""
from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_density, random_hermitian
from qskew.errors import DimensionMismatch, NotHermitian, NotPSD
from qskew.linalg import (
    clamped_spectrum,
    dagger,
    effective_spectrum,
    eigh,
    frobenius,
    hermitian_operator_basis,
    matrix_from_json_dict,
    matrix_to_json_dict,
    partial_trace,
    sqrt_psd,
    tensor,
)
from qskew import tolerances as tol


@pytest.mark.parametrize("d", [2, 3, 5, 8, 16])
def test_eigh_reconstructs_and_orders(d):
    gen = np.random.default_rng(d)
    for _ in range(5):
        h = random_hermitian(gen, d)
        dec = eigh(h)
        assert_allclose(dec.reconstruct(), h, atol=1e-10)
        assert_allclose(dagger(dec.eigenvectors) @ dec.eigenvectors, np.eye(d), atol=1e-10)
        assert np.all(np.diff(dec.eigenvalues) <= 0)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigh_exact_on_diagonal():
    dec = eigh(np.diag([0.75, 0.25]))
    assert_allclose(dec.eigenvalues, [0.75, 0.25], atol=0)


def test_tensor_and_partial_trace_roundtrip():
    gen = np.random.default_rng(7)
    a = random_density(gen, 3)
    b = random_density(gen, 4)
    ab = tensor(a, b)
    assert_allclose(partial_trace(ab, 3, 4, "A"), a, atol=1e-12)
    assert_allclose(partial_trace(ab, 3, 4, "B"), b, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        partial_trace(ab, 3, 4, "C")


def test_tensor_dimension_cap():
    from qskew.errors import DimensionOverflow

    big = np.eye(9)
    with pytest.raises(DimensionOverflow):
        tensor(big, np.eye(8))


def test_sqrt_psd_square_and_dust():
    gen = np.random.default_rng(11)
    m = random_density(gen, 4)
    s = sqrt_psd(m)
    assert_allclose(s @ s, m, atol=1e-9)
    assert_allclose(s, dagger(s), atol=1e-14)
    # rank-deficient input: the root has the same rank, no sqrt-amplified dust
    low = random_density(gen, 4, rank=2)
    s_low = sqrt_psd(low)
    assert_allclose(s_low @ s_low, low, atol=1e-9)
    assert np.sum(eigh(s_low).eigenvalues > 1e-6) == 2
    with pytest.raises(NotPSD):
        sqrt_psd(np.diag([1.0, -0.5]))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_operator_basis_orthonormal_complete(d):
    basis = hermitian_operator_basis(d)
    assert len(basis) == d * d
    assert_allclose(basis[0], np.eye(d) / np.sqrt(d), atol=0)
    flat = np.stack(basis).reshape(d * d, -1)
    assert_allclose((flat @ flat.conj().T).real, np.eye(d * d), atol=1e-12)
    gen = np.random.default_rng(d)
    x = random_hermitian(gen, d)
    assert_allclose(sum(g @ x @ g for g in basis), np.trace(x) * np.eye(d), atol=1e-12)


def test_effective_spectrum_zeroes_dust():
    w = np.array([0.6, 0.4, 1e-15, -1e-12])
    cleaned = effective_spectrum(w)
    assert_allclose(cleaned, [0.6, 0.4, 0.0, 0.0], atol=0)
    assert effective_spectrum(np.array([2 * tol.SUPPORT_CUTOFF]))[0] > 0


def test_clamped_spectrum_uses_decomposition():
    dec = eigh(np.diag([1.0, 1e-14, -1e-12]) / (1.0 + 1e-14 - 1e-12))
    assert np.all(clamped_spectrum(dec) >= 0)


def test_matrix_json_roundtrip():
    gen = np.random.default_rng(3)
    m = random_hermitian(gen, 3) + 1j * 0  # keep complex dtype
    again = matrix_from_json_dict(matrix_to_json_dict(m))
    assert_allclose(again, m, atol=0)
    with pytest.raises(DimensionMismatch):
        matrix_from_json_dict({"dim": 2, "re": [[1.0]], "im": [[0.0]]})


def test_frobenius_matches_numpy():
    gen = np.random.default_rng(5)
    m = gen.standard_normal((4, 4)) + 1j * gen.standard_normal((4, 4))
    assert_allclose(frobenius(m), np.linalg.norm(m), atol=1e-13)
