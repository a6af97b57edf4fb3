"""Seeded state/unitary generators: determinism, invariants, named families."""
from __future__ import annotations

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qskew.correlation import BipartiteState
from qskew.errors import FileError, InvalidSpec
from qskew.linalg import dagger, partial_trace
from qskew.states import (
    StateSpec,
    haar_unitary,
    haar_unitary_batch,
    materialize,
    state_to_json_dict,
)


def test_materialize_is_bitwise_deterministic():
    spec = StateSpec(kind="mixed_ginibre", dims=(4,), seed=11)
    assert np.array_equal(materialize(spec), materialize(spec))
    bspec = StateSpec(kind="pure_haar", dims=(2, 3), seed=5)
    assert np.array_equal(materialize(bspec).state, materialize(bspec).state)


def test_distinct_seeds_distinct_states():
    a = materialize(StateSpec(kind="mixed_ginibre", dims=(3,), seed=0))
    b = materialize(StateSpec(kind="mixed_ginibre", dims=(3,), seed=1))
    assert not np.allclose(a, b)


@pytest.mark.parametrize("kind", ["pure_haar", "mixed_ginibre"])
@pytest.mark.parametrize("dims", [(2,), (5,), (2, 2), (3, 2)])
def test_random_states_are_densities(kind, dims):
    for seed in range(5):
        made = materialize(StateSpec(kind=kind, dims=dims, seed=seed))
        rho = made.state if len(dims) == 2 else made
        assert_allclose(np.trace(rho), 1.0, atol=1e-12)
        assert_allclose(rho, dagger(rho), atol=1e-12)
        if kind == "pure_haar":
            assert_allclose(np.trace(rho @ rho), 1.0, atol=1e-10)


def test_bell_and_max_coherent():
    bell = materialize(StateSpec(kind="bell", dims=(3, 3)))
    assert isinstance(bell, BipartiteState)
    assert_allclose(np.trace(bell.state @ bell.state), 1.0, atol=1e-12)
    assert_allclose(bell.marginal_a, np.eye(3) / 3, atol=1e-12)
    top = materialize(StateSpec(kind="max_coherent", dims=(4,)))
    assert_allclose(top, np.full((4, 4), 0.25), atol=0)


def test_werner_endpoints():
    mixed = materialize(StateSpec(kind="werner", dims=(2, 2), param=0.0))
    assert_allclose(mixed.state, np.eye(4) / 4, atol=0)
    singlet = materialize(StateSpec(kind="werner", dims=(2, 2), param=1.0))
    psi = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
    assert_allclose(singlet.state, np.outer(psi, psi), atol=1e-15)


def test_isotropic_endpoint_is_max_entangled():
    iso = materialize(StateSpec(kind="isotropic", dims=(2, 2), param=1.0))
    bell = materialize(StateSpec(kind="bell", dims=(2, 2)))
    assert_allclose(iso.state, bell.state, atol=1e-15)


def test_product_state_is_kron_of_factors():
    fa = StateSpec(kind="mixed_ginibre", dims=(2,), seed=1)
    fb = StateSpec(kind="mixed_ginibre", dims=(3,), seed=2)
    prod = materialize(StateSpec(kind="product", factors=(fa, fb)))
    assert_allclose(prod.state, np.kron(materialize(fa), materialize(fb)), atol=1e-15)
    assert_allclose(partial_trace(prod.state, 2, 3, "A"), materialize(fa), atol=1e-12)


def test_file_roundtrip(tmp_path):
    rho = materialize(StateSpec(kind="mixed_ginibre", dims=(3,), seed=9))
    path = tmp_path / "state.json"
    path.write_text(json.dumps(state_to_json_dict(rho, (3,))))
    again = materialize(StateSpec(kind="file", path=str(path)))
    assert_allclose(again, rho, atol=1e-15)


def test_file_errors(tmp_path):
    with pytest.raises(FileError):
        materialize(StateSpec(kind="file", path=str(tmp_path / "missing.json")))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dims": [2], "re": [[1.0]]}))
    with pytest.raises(FileError):
        materialize(StateSpec(kind="file", path=str(bad)))


def test_invalid_specs_rejected():
    with pytest.raises(InvalidSpec):
        materialize(StateSpec(kind="nope", dims=(2,)))
    with pytest.raises(InvalidSpec):
        materialize(StateSpec(kind="werner", dims=(2, 2), param=1.5))
    with pytest.raises(InvalidSpec):
        materialize(StateSpec(kind="werner", dims=(3, 3), param=0.5))
    with pytest.raises(InvalidSpec):
        materialize(StateSpec(kind="isotropic", dims=(2, 3), param=0.5))
    with pytest.raises(InvalidSpec):
        materialize(StateSpec(kind="bell", dims=(2, 3)))
    with pytest.raises(InvalidSpec):
        materialize(StateSpec(kind="pure_haar", dims=()))


@pytest.mark.parametrize("d", [1, 2, 5])
def test_haar_unitary_deterministic_and_unitary(d):
    u = haar_unitary(d, 0, 7)
    assert np.array_equal(u, haar_unitary(d, 0, 7))
    assert_allclose(dagger(u) @ u, np.eye(d), atol=1e-12)
    if d > 1:
        assert not np.allclose(u, haar_unitary(d, 0, 8))


def test_haar_batch_matches_singles():
    batch = haar_unitary_batch(3, 4, 5, start_index=2)
    for i in range(5):
        assert np.array_equal(batch[i], haar_unitary(3, 4, 2 + i))


def test_haar_first_moment_is_depolarizing():
    d, n = 2, 2000
    gen = np.random.default_rng(0)
    x = gen.standard_normal((d, d))
    x = (x + x.T) / 2
    batch = haar_unitary_batch(d, 0, n)
    rotated = np.matmul(np.matmul(batch, x), batch.conj().transpose(0, 2, 1))
    mean = rotated.mean(axis=0)
    # scale ~ x / sqrt(n): loose 5-sigma-ish band
    assert_allclose(mean, np.trace(x) / d * np.eye(d), atol=0.12)
