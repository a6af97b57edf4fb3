"""Bipartite average correlation: route agreement, special cases, symmetries."""
from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_density
from qskew.correlation import (
    BipartiteState,
    average_correlation_closed,
    average_correlation_fisher_special,
    average_correlation_haar_mc,
    average_correlation_mub,
    average_correlation_operator_basis,
    average_correlation_twirl,
    average_correlation_wy_special,
    build_correlation_report,
    swap_parties,
    twirl_second_moment,
)
from qskew.errors import DimensionMismatch, InvalidSpec, NotPSD
from qskew.linalg import tensor
from qskew.monotone import get
from qskew.mub import build_mub_family
from qskew.states import StateSpec, materialize

WY = get("wy")
SLD = get("sld")


def bipartite(kind: str, dims=(2, 2), param: float | None = None) -> BipartiteState:
    return materialize(StateSpec(kind=kind, dims=dims, param=param, seed=0))


@pytest.mark.parametrize("metric", [WY, SLD])
def test_bell_state_correlation_is_half(metric):
    bp = bipartite("bell")
    family = build_mub_family(2)
    assert_allclose(average_correlation_closed(bp, metric), 0.5, atol=1e-10)
    assert_allclose(average_correlation_mub(bp, metric, family), 0.5, atol=1e-10)
    assert_allclose(average_correlation_operator_basis(bp, metric), 0.5, atol=1e-10)
    assert_allclose(average_correlation_twirl(bp, metric), 0.5, atol=1e-10)


def test_bell_state_shortcuts():
    bp = bipartite("bell")
    assert_allclose(average_correlation_wy_special(bp), 0.5, atol=1e-10)
    assert_allclose(average_correlation_fisher_special(bp), 0.5, atol=1e-10)


def product_state(d_a: int, d_b: int) -> BipartiteState:
    return materialize(
        StateSpec(
            kind="product",
            factors=(
                StateSpec(kind="mixed_ginibre", dims=(d_a,), seed=1),
                StateSpec(kind="mixed_ginibre", dims=(d_b,), seed=2),
            ),
        )
    )


@pytest.mark.parametrize("metric", [WY, SLD])
def test_product_state_has_zero_correlation(metric):
    bp = product_state(2, 3)
    assert_allclose(average_correlation_closed(bp, metric), 0.0, atol=1e-10)
    assert_allclose(average_correlation_operator_basis(bp, metric), 0.0, atol=1e-9)


def test_werner_endpoints():
    mixed = bipartite("werner", param=0.0)
    assert_allclose(average_correlation_closed(mixed, WY), 0.0, atol=1e-12)
    singlet = bipartite("werner", param=1.0)
    assert_allclose(average_correlation_closed(singlet, WY), 0.5, atol=1e-10)


@pytest.mark.parametrize("metric", [WY, SLD])
def test_routes_agree_on_mixed_states(metric):
    gen = np.random.default_rng(7)
    family = build_mub_family(2)
    for _ in range(5):
        bp = BipartiteState.create(random_density(gen, 4), 2, 2)
        closed = average_correlation_closed(bp, metric)
        assert_allclose(average_correlation_mub(bp, metric, family), closed, atol=1e-9)
        assert_allclose(
            average_correlation_operator_basis(bp, metric), closed, atol=1e-9
        )
        assert_allclose(average_correlation_twirl(bp, metric), closed, atol=1e-9)


def test_specials_match_their_metrics():
    gen = np.random.default_rng(11)
    for _ in range(5):
        bp = BipartiteState.create(random_density(gen, 6), 2, 3)
        assert_allclose(
            average_correlation_wy_special(bp),
            average_correlation_closed(bp, WY),
            atol=1e-9,
        )
        assert_allclose(
            average_correlation_fisher_special(bp),
            average_correlation_closed(bp, SLD),
            atol=1e-9,
        )


def test_haar_mc_band_and_determinism():
    bp = bipartite("isotropic", param=0.7)
    est = average_correlation_haar_mc(bp, WY, 1024, seed=3)
    closed = average_correlation_closed(bp, WY)
    assert abs(est.mean - closed) <= 4 * est.std_error + 1e-12
    assert est == average_correlation_haar_mc(bp, WY, 1024, seed=3)


def test_twirl_mc_mode():
    bp = bipartite("werner", param=0.4)
    est = average_correlation_twirl(bp, SLD, mode="mc", samples=1024, seed=2)
    closed = average_correlation_closed(bp, SLD)
    assert abs(est.mean - closed) <= 4 * est.std_error + 1e-12
    with pytest.raises(InvalidSpec):
        average_correlation_twirl(bp, SLD, mode="bogus")


def test_twirl_second_moment_identities():
    gen = np.random.default_rng(5)
    for d in (2, 3):
        x = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
        b = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
        eye = np.eye(d, dtype=complex)
        # E[U 1 U' X U 1 U'] = X and E[U 1 U' X U B U'] = (tr B / d) X
        assert_allclose(twirl_second_moment(eye, eye, x), x, atol=1e-12)
        assert_allclose(
            twirl_second_moment(eye, b, x), (np.trace(b) / d) * x, atol=1e-12
        )
        # X = 1 contracts the two rotations: E[U A B U'] = (tr AB / d) 1
        a = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
        assert_allclose(
            twirl_second_moment(a, b, eye), (np.trace(a @ b) / d) * eye, atol=1e-12
        )


def test_swap_parties_roundtrip():
    bp = product_state(2, 3)
    swapped = swap_parties(bp)
    assert swapped.d_a == 3 and swapped.d_b == 2
    back = swap_parties(swapped)
    assert_allclose(back.state, bp.state, atol=1e-14)
    # symmetric dims: bell correlation survives the exchange
    bell = bipartite("bell")
    assert_allclose(
        average_correlation_closed(swap_parties(bell), WY),
        average_correlation_closed(bell, WY),
        atol=1e-10,
    )


def test_local_unitaries_do_not_change_correlation():
    gen = np.random.default_rng(13)
    bp = BipartiteState.create(random_density(gen, 4), 2, 2)
    q = np.linalg.qr(gen.normal(size=(2, 2)) + 1j * gen.normal(size=(2, 2)))[0]
    r = np.linalg.qr(gen.normal(size=(2, 2)) + 1j * gen.normal(size=(2, 2)))[0]
    u = tensor(q, r)
    rotated = BipartiteState.create(u @ bp.state @ u.conj().T, 2, 2)
    assert_allclose(
        average_correlation_closed(rotated, WY),
        average_correlation_closed(bp, WY),
        atol=1e-9,
    )


def test_report_gathers_routes():
    bp = bipartite("werner", param=0.6)
    report = build_correlation_report(bp, WY, build_mub_family(2), samples=256, seed=0)
    assert report.mub_average is not None
    assert report.haar_mc.samples == 256
    assert_allclose(report.twirl_exact, report.closed_form, atol=1e-9)
    bare = build_correlation_report(bp, WY, None, samples=256, seed=0)
    assert bare.mub_average is None


def test_create_validation():
    with pytest.raises(DimensionMismatch):
        BipartiteState.create(np.eye(4) / 4, 3, 2)
    with pytest.raises(InvalidSpec):
        BipartiteState.create(np.eye(4) / 4, 0, 4)
    with pytest.raises(NotPSD):
        BipartiteState.create(np.diag([1.5, -0.5, 0.0, 0.0]).astype(complex), 2, 2)
    bp = bipartite("bell")
    with pytest.raises(DimensionMismatch):
        average_correlation_mub(bp, WY, build_mub_family(3))
