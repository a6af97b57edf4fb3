"""Hot kernels: the compiled extension and its pure-Python twin."""
from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_hermitian
from qskew import _kernels
from qskew._kernels import fallback
from qskew import tolerances as tol


@pytest.mark.parametrize("d", [2, 4, 9])
def test_jacobi_matches_numpy_eigh(d):
    gen = np.random.default_rng(d)
    for _ in range(5):
        h = random_hermitian(gen, d)
        w, v, converged = fallback.jacobi_eigh(h, tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL)
        assert converged
        assert_allclose(np.sort(w), np.sort(np.linalg.eigvalsh(h)), atol=1e-11)
        assert_allclose((v * w) @ v.conj().T, h, atol=1e-11)


def test_pair_weighted_abs2_sum_matches_einsum():
    gen = np.random.default_rng(0)
    for d in (2, 5):
        s = np.abs(gen.standard_normal((d, d)))
        m = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
        want = np.einsum("kl,kl->", s, np.abs(m) ** 2)
        assert_allclose(fallback.pair_weighted_abs2_sum(s, m), want, atol=1e-12)
        batch = np.stack([m, 2 * m])
        got = fallback.pair_weighted_abs2_sum_batch(s, batch)
        assert_allclose(got, [want, 4 * want], rtol=1e-12)


def test_projector_coherence_batch_matches_loop():
    gen = np.random.default_rng(1)
    d, n = 3, 4
    s = np.abs(gen.standard_normal((d, d)))
    p = gen.random((n, d, d))
    want = np.einsum("kl,nki,nli->n", s, p, p)
    assert_allclose(fallback.projector_coherence_batch(s, p), want, atol=1e-12)


@pytest.mark.skipif(_kernels.BACKEND != "compiled", reason="pure-Python build")
def test_compiled_agrees_with_fallback():
    from qskew._kernels import _core

    gen = np.random.default_rng(2)
    for d in (2, 6, 16):
        h = random_hermitian(gen, d)
        w_c, v_c, ok_c = _core.jacobi_eigh(h.copy(), tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL)
        w_f, v_f, ok_f = fallback.jacobi_eigh(h.copy(), tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL)
        assert ok_c == ok_f
        assert_allclose(np.sort(w_c), np.sort(w_f), atol=1e-12)
        assert_allclose((v_c * w_c) @ v_c.conj().T, (v_f * w_f) @ v_f.conj().T, atol=1e-11)
        s = np.abs(random_hermitian(gen, d).real)
        m = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
        assert_allclose(
            _core.pair_weighted_abs2_sum(s, m),
            fallback.pair_weighted_abs2_sum(s, m),
            rtol=1e-13,
        )


def test_backend_name_is_declared():
    assert _kernels.backend_name() in ("compiled", "python")
    assert _kernels.BACKEND == _kernels.backend_name()
