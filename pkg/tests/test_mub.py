"""Mutually unbiased bases: construction, certification, swap identity."""
from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qskew.errors import DimensionMismatch, UnsupportedDimension
from qskew.mub import (
    build_mub_family,
    certify_mub,
    computational_basis,
    measurement_basis,
    projector_double_sum,
    swap_operator,
)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
def test_family_size_and_certification(d):
    family = build_mub_family(d)
    assert family.dim == d
    assert len(family.bases) == d + 1
    cert = certify_mub(family)
    assert cert.max_orthonormality_error <= 1e-10
    assert cert.max_unbiasedness_error <= 1e-10
    assert cert.accepted


def test_unsupported_dimension():
    for d in (1, 6, 10):
        with pytest.raises(UnsupportedDimension):
            build_mub_family(d)


def test_unbiasedness_explicitly_d2():
    family = build_mub_family(2)
    for t in range(3):
        for s in range(t + 1, 3):
            overlaps = np.abs(
                family.bases[t].vectors.conj().T @ family.bases[s].vectors
            ) ** 2
            assert_allclose(overlaps, np.full((2, 2), 0.5), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_swap_operator_properties(d):
    f = swap_operator(d)
    assert_allclose(f @ f, np.eye(d * d), atol=0)
    gen = np.random.default_rng(d)
    a = gen.standard_normal((d, d))
    b = gen.standard_normal((d, d))
    assert_allclose(f @ np.kron(a, b) @ f, np.kron(b, a), atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7])
def test_projector_double_sum_identity(d):
    family = build_mub_family(d)
    total = projector_double_sum(family)
    assert_allclose(total, np.eye(d * d) + swap_operator(d), atol=1e-9)


def test_measurement_basis_rejects_skewed_columns():
    with pytest.raises(DimensionMismatch):
        measurement_basis(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_computational_basis_projectors():
    basis = computational_basis(3)
    p1 = basis.projector(1)
    assert_allclose(p1, np.diag([0.0, 1.0, 0.0]), atol=0)
