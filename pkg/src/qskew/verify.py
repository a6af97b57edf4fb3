"""Cross-oracle verification suite.

Every documented invariant of every module is realized here as a named
check returning a (max_residual, tolerance) pair; the CLI `verify`
subcommand runs them all and exits nonzero on any failure.  Checks are
deterministic for a fixed seed and are written against independent
routes wherever two exist, so a silent regression in one formula cannot
hide behind its twin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, coherence, correlation, duality, mub, rng
from . import tolerances as tol
from .errors import InvalidSpec, NotPure, UnsupportedDimension
from .linalg import (
    SpectralDecomposition,
    clamped_spectrum,
    dagger,
    eigh,
    frobenius,
    hermitian_operator_basis,
    hermitianize,
    partial_trace,
    sqrt_psd,
    tensor,
)
from .monotone import MonotoneFunction, c_f, get, spectrum_tilde_sum, tilde_c
from .skew import SkewContext, skew_information, skew_information_ratio_form
from .states import StateSpec, haar_chunks, haar_unitary, materialize


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool


def _result(name: str, residual: float, tolerance: float) -> CheckResult:
    residual = float(residual)
    return CheckResult(name, residual, float(tolerance), residual <= tolerance)


def _gen(seed: int, index: int):
    return rng.stream(seed, index, rng.DOMAIN_GENERIC)


def _random_hermitian(gen, d: int) -> np.ndarray:
    z = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return hermitianize(z)


def _random_density(gen, d: int, rank: int | None = None) -> np.ndarray:
    r = d if rank is None else rank
    g = gen.standard_normal((d, r)) + 1j * gen.standard_normal((d, r))
    m = g @ g.conj().T
    return m / np.trace(m).real


def _random_basis(d: int, seed: int, index: int) -> mub.MeasurementBasis:
    return mub.measurement_basis(haar_unitary(d, seed, index))


def _metrics() -> list[MonotoneFunction]:
    return [get("wy"), get("sld")]


def _mc_excess(closed: float, estimate: coherence.McEstimate) -> float:
    band = tol.MC_SIGMA_FACTOR * estimate.std_error + tol.MC_NOISE_FLOOR
    return max(0.0, abs(estimate.mean - closed) - band)


def _mixed_state_pool(seed: int, tag: int, dims: tuple[int, ...], count: int):
    """Ginibre-mixed, Haar-pure, and rank-deficient states in a 7:2:1 mix."""
    out = []
    d = int(np.prod(dims))
    for i in range(count):
        base = seed * 1_000_003 + tag * 1009 + i
        slot = i % 10
        if slot < 7:
            out.append(materialize(StateSpec(kind="mixed_ginibre", dims=dims, seed=base)))
        elif slot < 9:
            out.append(materialize(StateSpec(kind="pure_haar", dims=dims, seed=base)))
        else:
            rho = _random_density(_gen(base, tag), d, rank=max(1, d - 1))
            if len(dims) == 2:
                out.append(correlation.BipartiteState.create(rho, dims[0], dims[1]))
            else:
                out.append(rho)
    return out


# --- linalg ---------------------------------------------------------------


def check_eigh_reconstruct(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 4, 5, 6, 8, 13, 16, 32, 64):
        draws = 1 if d >= 32 else 3
        for i in range(draws):
            h = _random_hermitian(_gen(seed, 11_000 + d * 10 + i), d)
            dec = eigh(h)
            scale = max(1.0, frobenius(h))
            worst = max(worst, frobenius(dec.reconstruct() - h) / scale)
            worst = max(
                worst,
                frobenius(dagger(dec.eigenvectors) @ dec.eigenvectors - np.eye(d)),
            )
            if np.any(np.diff(dec.eigenvalues) > 0):
                worst = max(worst, 1.0)
    return _result("linalg.eigh_reconstruct", worst, tol.RECONSTRUCTION_TOL)


def check_tensor_partial_trace(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    gen = _gen(seed, 12_000)
    for _ in range(20):
        d_a = int(gen.integers(2, 6))
        d_b = int(gen.integers(2, 6))
        a = _random_hermitian(gen, d_a) + 1j * _random_hermitian(gen, d_a)
        b = _random_hermitian(gen, d_b) + 1j * _random_hermitian(gen, d_b)
        prod = tensor(a, b)
        worst = max(
            worst, frobenius(partial_trace(prod, d_a, d_b, "A") - a * np.trace(b))
        )
        worst = max(
            worst, frobenius(partial_trace(prod, d_a, d_b, "B") - b * np.trace(a))
        )
        worst = max(worst, abs(np.trace(prod) - np.trace(a) * np.trace(b)))
    return _result("linalg.tensor_partial_trace", worst, tol.PARTIAL_TRACE_TOL)


def check_operator_basis(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in range(2, 9):
        basis = hermitian_operator_basis(d)
        flat = np.stack(basis).reshape(d * d, d * d)
        gram = (flat @ flat.conj().T).real
        worst = max(worst, np.abs(gram - np.eye(d * d)).max())
        x = _random_hermitian(_gen(seed, 13_000 + d), d)
        expansion = sum(np.trace(g @ x) * g for g in basis)
        worst = max(worst, frobenius(expansion - x))
        sandwich = sum(g @ x @ g for g in basis)
        worst = max(worst, frobenius(sandwich - np.trace(x) * np.eye(d)))
        for g in basis:
            worst = max(worst, frobenius(g - dagger(g)))
    return _result("linalg.operator_basis", worst, tol.OPERATOR_BASIS_GRAM_TOL)


def check_sqrt_psd(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in range(2, 7):
        for i in range(10):
            m = _random_density(_gen(seed, 14_000 + d * 100 + i), d)
            s = sqrt_psd(m)
            worst = max(worst, frobenius(s @ s - m))
            worst = max(worst, frobenius(s - dagger(s)))
    return _result("linalg.sqrt_psd", worst, tol.SQRT_RESIDUAL_TOL)


def check_sqrt_degenerate(seed: int, samples: int) -> CheckResult:
    """sqrt_psd must be equivariant under permutations that shuffle degenerate
    eigenvector slots, i.e. depend on the matrix alone."""
    worst = 0.0
    gen = _gen(seed, 15_000)
    for d, spectrum in ((3, (0.5, 0.25, 0.25)), (4, (0.25, 0.25, 0.25, 0.25)), (4, (0.5, 0.5, 0.0, 0.0))):
        v = haar_unitary(d, seed, 15_100 + d)
        m = hermitianize((v * np.asarray(spectrum)) @ dagger(v))
        s = sqrt_psd(m)
        worst = max(worst, frobenius(s @ s - m))
        for _ in range(5):
            perm = gen.permutation(d)
            pm = np.eye(d)[perm]
            rotated = pm @ m @ pm.T
            worst = max(worst, frobenius(sqrt_psd(rotated) - pm @ s @ pm.T))
    return _result("linalg.sqrt_degenerate", worst, tol.RECONSTRUCTION_TOL)


# --- monotone -------------------------------------------------------------


def check_monotone_symmetry(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    gen = _gen(seed, 21_000)
    xs = np.exp(gen.uniform(np.log(1e-6), 0.0, size=200))
    ys = np.exp(gen.uniform(np.log(1e-6), 0.0, size=200))
    for f in _metrics():
        t = xs / ys
        ft = np.asarray(f.fn(t))
        # f and c_f reach ~1e6 at the grid edges, so those comparisons are
        # relative; tilde stays O(1) and is compared absolutely
        worst = max(
            worst,
            float((np.abs(ft - t * np.asarray(f.fn(1.0 / t))) / np.maximum(1.0, ft)).max()),
        )
        worst = max(worst, abs(float(f.fn(1.0)) - 1.0))
        for x, y in zip(xs[:50], ys[:50]):
            worst = max(worst, abs(tilde_c(f, x, y) - tilde_c(f, y, x)))
            c_xy = c_f(f, x, y)
            worst = max(worst, abs(c_xy - c_f(f, y, x)) / max(1.0, abs(c_xy)))
            worst = max(worst, abs(tilde_c(f, x, 0.0)))
            worst = max(worst, abs(tilde_c(f, x, x) - x))
        worst = max(worst, abs(tilde_c(f, 0.0, 0.0)))
    return _result("monotone.symmetry", worst, tol.KERNEL_SYMMETRY_TOL)


def check_monotone_wy_closed_form(seed: int, samples: int) -> CheckResult:
    f = get("wy")
    gen = _gen(seed, 22_000)
    x = np.exp(gen.uniform(np.log(1e-8), 0.0, size=100))
    y = np.exp(gen.uniform(np.log(1e-8), 0.0, size=100))
    worst = max(
        abs(tilde_c(f, a, b) - math.sqrt(a * b)) for a, b in zip(x, y)
    )
    return _result("monotone.wy_closed_form", worst, tol.KERNEL_SYMMETRY_TOL)


def check_monotone_sld_closed_form(seed: int, samples: int) -> CheckResult:
    f = get("sld")
    gen = _gen(seed, 23_000)
    x = np.exp(gen.uniform(np.log(1e-8), 0.0, size=100))
    y = np.exp(gen.uniform(np.log(1e-8), 0.0, size=100))
    worst = max(
        abs(tilde_c(f, a, b) - 2.0 * a * b / (a + b)) for a, b in zip(x, y)
    )
    return _result("monotone.sld_closed_form", worst, tol.KERNEL_SYMMETRY_TOL)


def check_tilde_sum_range(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for f in _metrics():
        for d in range(2, 7):
            pure = np.zeros(d)
            pure[0] = 1.0
            worst = max(worst, abs(spectrum_tilde_sum(f, pure) - 1.0))
            worst = max(
                worst, abs(spectrum_tilde_sum(f, np.full(d, 1.0 / d)) - d)
            )
            gen = _gen(seed, 24_000 + d)
            for _ in range(100):
                p = gen.dirichlet(np.ones(d))
                p = p / p.sum()
                t = spectrum_tilde_sum(f, p)
                # strictly above 1 for non-pure, strictly below d off the uniform point
                if p.max() < 1.0 - 1e-6:
                    worst = max(worst, max(0.0, 1.0 + 1e-9 - t))
                worst = max(worst, max(0.0, t - d))
    return _result("monotone.tilde_sum_range", worst, tol.SPECTRUM_SUM_TOL)


# --- skew -----------------------------------------------------------------


def check_skew_dual_form(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in range(2, 7):
        for i in range(200):
            gen = _gen(seed, 31_000 + d * 1000 + i)
            rank = d if i % 5 else max(1, d - 1)
            rho = _random_density(gen, d, rank=rank)
            a = _random_hermitian(gen, d)
            for f in _metrics():
                ctx = SkewContext.create(rho, f)
                main = skew_information(ctx, a)
                oracle = skew_information_ratio_form(ctx, a)
                worst = max(worst, abs(main - oracle))
    return _result("skew.dual_form", worst, tol.SCHEME_AGREEMENT_TOL)


def check_skew_convexity(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in range(2, 7):
        for i in range(20):
            gen = _gen(seed, 32_000 + d * 100 + i)
            rho1 = _random_density(gen, d)
            rho2 = _random_density(gen, d)
            a = _random_hermitian(gen, d)
            for f in _metrics():
                i1 = skew_information(SkewContext.create(rho1, f), a)
                i2 = skew_information(SkewContext.create(rho2, f), a)
                for t in (0.25, 0.5, 0.75):
                    mix = skew_information(
                        SkewContext.create(t * rho1 + (1 - t) * rho2, f), a
                    )
                    worst = max(worst, mix - (t * i1 + (1 - t) * i2))
    return _result("skew.convexity", worst, tol.CONVEXITY_SLACK)


def check_skew_commuting_zero(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    floor = np.inf
    for d in range(2, 7):
        for i in range(20):
            gen = _gen(seed, 33_000 + d * 100 + i)
            v = haar_unitary(d, seed, 33_500 + d * 100 + i)
            p = gen.dirichlet(np.ones(d))
            if i % 4 == 0:
                p = np.sort(p)[::-1]
                p[1] = p[0]  # force a degenerate pair
                p = p / p.sum()
            rho = hermitianize((v * p) @ dagger(v))
            a = hermitianize((v * gen.standard_normal(d)) @ dagger(v))
            for f in _metrics():
                worst = max(
                    worst, skew_information(SkewContext.create(rho, f), a)
                )
            rho_n = _random_density(gen, d)
            a_n = _random_hermitian(gen, d)
            if frobenius(rho_n @ a_n - a_n @ rho_n) > 0.1:
                for f in _metrics():
                    floor = min(
                        floor, skew_information(SkewContext.create(rho_n, f), a_n)
                    )
    if floor <= 1e-6:
        worst = max(worst, 1.0)
    return _result("skew.commuting_zero", worst, tol.SCHEME_AGREEMENT_TOL)


def check_skew_degeneracy(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    cases = (
        (3, (0.5, 0.25, 0.25)),
        (4, (0.3, 0.3, 0.2, 0.2)),
        (4, (0.25, 0.25, 0.25, 0.25)),
        (6, (0.3, 0.3, 0.3, 0.1, 0.0, 0.0)),
    )
    for case_idx, (d, spectrum) in enumerate(cases):
        spectrum = np.asarray(spectrum, dtype=float)
        for i in range(5):
            gen = _gen(seed, 34_000 + case_idx * 100 + i)
            v = haar_unitary(d, seed, 34_500 + case_idx * 100 + i)
            rho = hermitianize((v * spectrum) @ dagger(v))
            a = _random_hermitian(gen, d)
            remix = np.zeros((d, d), dtype=complex)
            start = 0
            while start < d:
                stop = start
                while stop < d and abs(spectrum[stop] - spectrum[start]) < tol.DEGENERACY_TOL:
                    stop += 1
                block = gen.standard_normal((stop - start,) * 2) + 1j * gen.standard_normal(
                    (stop - start,) * 2
                )
                q, r = np.linalg.qr(block)
                remix[start:stop, start:stop] = q * (
                    np.diag(r) / np.abs(np.diag(r))
                )
                start = stop
            dec = SpectralDecomposition(spectrum, v @ remix)
            for f in _metrics():
                base = skew_information(SkewContext.create(rho, f), a)
                alt = skew_information(
                    SkewContext.from_decomposition(rho, dec, f), a
                )
                worst = max(worst, abs(base - alt))
    return _result("skew.degeneracy", worst, tol.DEGENERACY_TOL)


def check_skew_unitary_observable(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in range(2, 6):
        for i in range(10):
            gen = _gen(seed, 35_000 + d * 100 + i)
            rho = _random_density(gen, d)
            u = haar_unitary(d, seed, 35_500 + d * 100 + i)
            anti = 0.5 * np.trace(rho @ (dagger(u) @ u + u @ dagger(u))).real
            worst = max(worst, abs(anti - 1.0))
            for f in _metrics():
                value = skew_information(SkewContext.create(rho, f), u)
                worst = max(worst, max(0.0, value - 1.0))
                worst = max(worst, max(0.0, -value))
    return _result("skew.unitary_observable", worst, tol.SCHEME_AGREEMENT_TOL)


# --- mub ------------------------------------------------------------------


def check_mub_certification(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 4, 5, 7):
        family = mub.build_mub_family(d)
        if len(family.bases) != d + 1:
            worst = max(worst, 1.0)
        cert = mub.certify_mub(family)
        worst = max(
            worst, cert.max_orthonormality_error, cert.max_unbiasedness_error
        )
    try:
        mub.build_mub_family(6)
        worst = max(worst, 1.0)
    except UnsupportedDimension:
        pass
    return _result("mub.certification", worst, tol.MUB_CERT_TOL)


def check_mub_swap_identity(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 4, 5, 7):
        family = mub.build_mub_family(d)
        total = mub.projector_double_sum(family)
        target = np.eye(d * d) + mub.swap_operator(d)
        worst = max(worst, frobenius(total - target))
    return _result("mub.swap_identity", worst, tol.SWAP_IDENTITY_TOL)


# --- coherence ------------------------------------------------------------


def check_coherence_four_way(seed: int, samples: int) -> CheckResult:
    """Closed form vs MUB vs operator basis exactly; Haar MC within its own
    4-sigma band (any excess beyond the band is reported as the residual)."""
    worst = 0.0
    for d in (2, 3, 5):
        family = mub.build_mub_family(d)
        pool = _mixed_state_pool(seed, 41, (d,), 50)
        for f in _metrics():
            for rho in pool:
                ctx = SkewContext.create(rho, f)
                closed = coherence.average_coherence_closed(ctx)
                worst = max(
                    worst, abs(coherence.average_coherence_mub(ctx, family) - closed)
                )
                worst = max(
                    worst,
                    abs(coherence.average_coherence_operator_basis(ctx) - closed),
                )
                estimate = coherence.average_coherence_haar_mc(ctx, samples, seed)
                worst = max(worst, _mc_excess(closed, estimate))
    return _result("coherence.four_way", worst, tol.SCHEME_AGREEMENT_TOL)


def check_coherence_unitary_invariance(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 5):
        for i in range(10):
            gen = _gen(seed, 42_000 + d * 100 + i)
            rho = _random_density(gen, d)
            u = haar_unitary(d, seed, 42_500 + d * 100 + i)
            rotated = hermitianize(u @ rho @ dagger(u))
            basis = _random_basis(d, seed, 42_800 + d * 100 + i)
            for f in _metrics():
                ctx = SkewContext.create(rho, f)
                ctx_rot = SkewContext.create(rotated, f)
                worst = max(
                    worst,
                    abs(
                        coherence.average_coherence_closed(ctx_rot)
                        - coherence.average_coherence_closed(ctx)
                    ),
                )
                co_basis = mub.measurement_basis(u @ basis.vectors)
                worst = max(
                    worst,
                    abs(
                        coherence.coherence_wrt_basis(ctx_rot, co_basis)
                        - coherence.coherence_wrt_basis(ctx, basis)
                    ),
                )
    return _result("coherence.unitary_invariance", worst, tol.UNITARY_INVARIANCE_TOL)


def check_coherence_bounds(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 5):
        bound = (d - 1.0) / (d + 1.0)
        for f in _metrics():
            for i in range(20):
                gen = _gen(seed, 43_000 + d * 100 + i)
                rho = (
                    _random_density(gen, d, rank=1)
                    if i % 4 == 0
                    else _random_density(gen, d)
                )
                ctx = SkewContext.create(rho, f)
                closed = coherence.average_coherence_closed(ctx)
                worst = max(worst, max(0.0, -closed))
                worst = max(worst, max(0.0, closed - bound - tol.SCHEME_AGREEMENT_TOL))
                purity = float((clamped_spectrum(ctx.decomposition) ** 2).sum())
                if purity > 1.0 - 1e-9:
                    worst = max(worst, abs(closed - bound))
                elif purity < 1.0 - 1e-6:
                    if bound - closed <= tol.SCHEME_AGREEMENT_TOL:
                        worst = max(worst, 1.0)
            mixed_ctx = SkewContext.create(np.eye(d) / d, f)
            worst = max(worst, abs(coherence.average_coherence_closed(mixed_ctx)))
    return _result("coherence.bounds", worst, tol.SCHEME_AGREEMENT_TOL)


# --- correlation ----------------------------------------------------------

_CORRELATION_DIMS = ((2, 2), (2, 3), (3, 2), (5, 2))


def check_correlation_four_way(seed: int, samples: int) -> CheckResult:
    """All exact routes pairwise; both MC routes within their 4-sigma bands."""
    worst = 0.0
    for d_a, d_b in _CORRELATION_DIMS:
        family = mub.build_mub_family(d_a)
        pool = _mixed_state_pool(seed, 51, (d_a, d_b), 50)
        for f in _metrics():
            for bp in pool:
                closed = correlation.average_correlation_closed(bp, f)
                exact = (
                    closed,
                    correlation.average_correlation_mub(bp, f, family),
                    correlation.average_correlation_operator_basis(bp, f),
                    correlation.average_correlation_twirl(bp, f, mode="exact"),
                )
                worst = max(worst, max(exact) - min(exact))
                haar = correlation.average_correlation_haar_mc(bp, f, samples, seed)
                worst = max(worst, _mc_excess(closed, haar))
                twirl = correlation.average_correlation_twirl(
                    bp, f, mode="mc", samples=samples, seed=seed
                )
                worst = max(worst, _mc_excess(closed, twirl))
    return _result("correlation.four_way", worst, tol.SCHEME_AGREEMENT_TOL)


def check_correlation_local_invariance(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d_a, d_b in _CORRELATION_DIMS:
        for i in range(10):
            bp = materialize(
                StateSpec(
                    kind="mixed_ginibre",
                    dims=(d_a, d_b),
                    seed=seed * 1_000_003 + 52 * 1009 + i,
                )
            )
            u_a = haar_unitary(d_a, seed, 52_000 + 10 * d_a + i)
            u_b = haar_unitary(d_b, seed, 52_500 + 10 * d_b + i)
            rotated = correlation.BipartiteState.create(
                hermitianize(tensor(u_a, u_b) @ bp.state @ dagger(tensor(u_a, u_b))),
                d_a,
                d_b,
            )
            basis = _random_basis(d_a, seed, 52_800 + 10 * d_a + i)
            co_basis = mub.measurement_basis(u_a @ basis.vectors)
            for f in _metrics():
                worst = max(
                    worst,
                    abs(
                        correlation.average_correlation_closed(rotated, f)
                        - correlation.average_correlation_closed(bp, f)
                    ),
                )
                worst = max(
                    worst,
                    abs(
                        correlation.correlation_wrt_basis(rotated, f, co_basis)
                        - correlation.correlation_wrt_basis(bp, f, basis)
                    ),
                )
    return _result("correlation.local_invariance", worst, tol.SCHEME_AGREEMENT_TOL)


def check_correlation_specials(seed: int, samples: int) -> CheckResult:
    """WY and SLD shortcut formulas against the general closed form, plus the
    frozen Bell-state value 1/2 for both metrics."""
    worst = 0.0
    wy = get("wy")
    sld = get("sld")
    for i in range(100):
        dims = _CORRELATION_DIMS[i % 3]
        bp = materialize(
            StateSpec(
                kind="mixed_ginibre" if i % 3 else "pure_haar",
                dims=dims,
                seed=seed * 1_000_003 + 53 * 1009 + i,
            )
        )
        worst = max(
            worst,
            abs(
                correlation.average_correlation_wy_special(bp)
                - correlation.average_correlation_closed(bp, wy)
            ),
        )
        worst = max(
            worst,
            abs(
                correlation.average_correlation_fisher_special(bp)
                - correlation.average_correlation_closed(bp, sld)
            ),
        )
    bell = materialize(StateSpec(kind="bell", dims=(2, 2)))
    for value in (
        correlation.average_correlation_closed(bell, wy),
        correlation.average_correlation_wy_special(bell),
        correlation.average_correlation_closed(bell, sld),
        correlation.average_correlation_fisher_special(bell),
    ):
        worst = max(worst, abs(value - 0.5))
    return _result("correlation.specials", worst, tol.SCHEME_AGREEMENT_TOL)


def check_correlation_product_zero(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for i in range(20):
        d_a, d_b = _CORRELATION_DIMS[i % 3]
        base = seed * 1_000_003 + 54 * 1009 + 2 * i
        bp = materialize(
            StateSpec(
                kind="product",
                dims=(d_a, d_b),
                factors=(
                    StateSpec(kind="mixed_ginibre", dims=(d_a,), seed=base),
                    StateSpec(kind="mixed_ginibre", dims=(d_b,), seed=base + 1),
                ),
            )
        )
        basis = _random_basis(d_a, seed, 54_000 + i)
        for f in _metrics():
            worst = max(worst, abs(correlation.average_correlation_closed(bp, f)))
            worst = max(worst, abs(correlation.correlation_wrt_basis(bp, f, basis)))
    return _result("correlation.product_zero", worst, tol.SCHEME_AGREEMENT_TOL)


def check_correlation_degenerate_remix(seed: int, samples: int) -> CheckResult:
    """Closed form must not depend on the eigenbasis chosen inside degenerate
    blocks of the joint spectrum; Werner and isotropic families make the
    degeneracy maximal."""
    worst = 0.0
    specs = [
        StateSpec(kind="werner", dims=(2, 2), param=p)
        for p in (0.0, 0.25, 0.5, 0.75, 1.0)
    ]
    specs += [
        StateSpec(kind="isotropic", dims=(2, 2), param=p) for p in (0.0, 0.25, 1.0)
    ]
    specs += [
        StateSpec(kind="isotropic", dims=(3, 3), param=p) for p in (1.0 / 9.0, 0.6)
    ]
    for case_idx, spec in enumerate(specs):
        bp = materialize(spec)
        d = bp.dim
        gen = _gen(seed, 55_000 + case_idx)
        lam = bp.decomposition.eigenvalues
        remix = np.zeros((d, d), dtype=complex)
        start = 0
        while start < d:
            stop = start
            while stop < d and abs(lam[stop] - lam[start]) < tol.DEGENERACY_TOL:
                stop += 1
            block = gen.standard_normal((stop - start,) * 2) + 1j * gen.standard_normal(
                (stop - start,) * 2
            )
            q, r = np.linalg.qr(block)
            remix[start:stop, start:stop] = q * (np.diag(r) / np.abs(np.diag(r)))
            start = stop
        vectors = bp.decomposition.eigenvectors @ remix
        mats = np.ascontiguousarray(vectors.T.reshape(d, bp.d_a, bp.d_b))
        support = np.flatnonzero(lam > tol.SUPPORT_CUTOFF)
        kept = mats[support]
        remixed = correlation.BipartiteState(
            d_a=bp.d_a,
            d_b=bp.d_b,
            state=bp.state,
            decomposition=SpectralDecomposition(lam, vectors),
            eigenmatrices=mats,
            support=support,
            sigma_b=np.einsum("kab,kac->kbc", kept, kept.conj()),
            marginal_a=bp.marginal_a,
            marginal_decomposition=bp.marginal_decomposition,
        )
        family = mub.build_mub_family(bp.d_a)
        for f in _metrics():
            base = correlation.average_correlation_closed(bp, f)
            alt = correlation.average_correlation_closed(remixed, f)
            worst = max(worst, abs(base - alt))
            worst = max(
                worst, abs(correlation.average_correlation_mub(bp, f, family) - base)
            )
    return _result("correlation.degenerate_remix", worst, tol.DEGENERATE_REMIX_TOL)


def check_correlation_swap(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for i in range(10):
        d_a, d_b = _CORRELATION_DIMS[i % len(_CORRELATION_DIMS)]
        bp = materialize(
            StateSpec(
                kind="mixed_ginibre",
                dims=(d_a, d_b),
                seed=seed * 1_000_003 + 56 * 1009 + i,
            )
        )
        swapped = correlation.swap_parties(bp)
        worst = max(
            worst,
            frobenius(correlation.swap_parties(swapped).state - bp.state),
        )
        worst = max(
            worst,
            frobenius(swapped.marginal_a - partial_trace(bp.state, d_a, d_b, "B")),
        )
    for i in range(5):
        bp = materialize(
            StateSpec(
                kind="pure_haar",
                dims=(3, 3),
                seed=seed * 1_000_003 + 56 * 1009 + 100 + i,
            )
        )
        swapped = correlation.swap_parties(bp)
        for f in _metrics():
            worst = max(
                worst,
                abs(
                    correlation.average_correlation_closed(swapped, f)
                    - correlation.average_correlation_closed(bp, f)
                ),
            )
    return _result("correlation.swap", worst, tol.SCHEME_AGREEMENT_TOL)


# --- duality --------------------------------------------------------------


def check_duality_prop4(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    metrics = _metrics()
    for d in range(2, 7):
        for i in range(200):
            gen = _gen(seed, 61_000 + d * 1000 + i)
            kind = i % 5
            if kind == 0:
                rho = _random_density(gen, d, rank=1)
            elif kind == 1:
                rho = _random_density(gen, d, rank=max(1, d - 1))
            else:
                rho = _random_density(gen, d)
            basis = _random_basis(d, seed, 61_000 + d * 1000 + i)
            f = metrics[i % 2]
            report = duality.complementarity_report(SkewContext.create(rho, f), basis)
            worst = max(worst, report.residual_prop4)
    return _result("duality.prop4", worst, tol.PROP4_TOL)


def check_duality_prop3(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in range(2, 7):
        for i in range(10):
            gen = _gen(seed, 62_000 + d * 100 + i)
            basis = _random_basis(d, seed, 62_500 + d * 100 + i)
            pure = _random_density(gen, d, rank=1)
            mixed = _random_density(gen, d)
            for f in _metrics():
                rp = duality.complementarity_report(SkewContext.create(pure, f), basis)
                worst = max(worst, abs(rp.wave + rp.particle - (d - 1.0)))
                rm = duality.complementarity_report(SkewContext.create(mixed, f), basis)
                worst = max(worst, rm.wave + rm.particle - (d - 1.0))
                purity = float(np.trace(mixed @ mixed).real)
                if purity < 1.0 - 1e-6 and (d - 1.0) - (rm.wave + rm.particle) <= 1e-9:
                    worst = max(worst, 1.0)
    return _result("duality.prop3", worst, tol.PROP4_TOL)


def check_duality_convexity(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 4):
        for i in range(15):
            gen = _gen(seed, 63_000 + d * 100 + i)
            rho1 = _random_density(gen, d)
            rho2 = _random_density(gen, d)
            basis = _random_basis(d, seed, 63_500 + d * 100 + i)
            for f in _metrics():
                r1 = duality.complementarity_report(SkewContext.create(rho1, f), basis)
                r2 = duality.complementarity_report(SkewContext.create(rho2, f), basis)
                for t in (0.25, 0.5, 0.75):
                    rm = duality.complementarity_report(
                        SkewContext.create(t * rho1 + (1 - t) * rho2, f), basis
                    )
                    worst = max(worst, rm.wave - (t * r1.wave + (1 - t) * r2.wave))
                    worst = max(
                        worst, rm.particle - (t * r1.particle + (1 - t) * r2.particle)
                    )
    return _result("duality.convexity", worst, tol.CONVEXITY_SLACK)


def check_duality_permutation(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3, 5):
        for i in range(15):
            gen = _gen(seed, 64_000 + d * 100 + i)
            rho = _random_density(gen, d)
            basis = _random_basis(d, seed, 64_500 + d * 100 + i)
            perm = gen.permutation(d)
            relabeled = mub.measurement_basis(basis.vectors[:, perm])
            pm = np.eye(d)[perm].astype(complex)
            conjugated = mub.measurement_basis(pm @ basis.vectors)
            rho_conj = pm @ rho @ pm.conj().T
            for f in _metrics():
                ctx = SkewContext.create(rho, f)
                w = duality.wave_feature(ctx, basis)
                p = duality.particle_feature(ctx, basis)
                worst = max(worst, abs(duality.wave_feature(ctx, relabeled) - w))
                worst = max(worst, abs(duality.particle_feature(ctx, relabeled) - p))
                ctx_c = SkewContext.create(rho_conj, f)
                worst = max(worst, abs(duality.wave_feature(ctx_c, conjugated) - w))
                worst = max(worst, abs(duality.particle_feature(ctx_c, conjugated) - p))
    return _result("duality.permutation", worst, tol.PERMUTATION_TOL)


def check_duality_w_maximizer(seed: int, samples: int) -> CheckResult:
    """Pure d=3 states: W never exceeds 1 - 1/d, and near-saturation forces
    near-uniform overlaps; the maximally coherent state attains the bound."""
    d = 3
    bound = 1.0 - 1.0 / d
    worst = 0.0
    basis = mub.computational_basis(d)
    wy = get("wy")
    for i in range(1000):
        psi = materialize(StateSpec(kind="pure_haar", dims=(d,), seed=seed * 1_000_003 + 65 * 1009 + i))
        ctx = SkewContext.create(psi, wy)
        w = duality.wave_feature(ctx, basis)
        worst = max(worst, w - bound)
        if w >= bound - 1e-9:
            # saturation within 1e-9 forces overlaps within sqrt(1e-9) of 1/d
            overlaps = np.diag(psi).real
            if np.abs(overlaps - 1.0 / d).max() > 1e-4:
                worst = max(worst, 1.0)
    top = materialize(StateSpec(kind="max_coherent", dims=(d,)))
    for f in _metrics():
        w_top = duality.wave_feature(SkewContext.create(top, f), basis)
        worst = max(worst, abs(w_top - bound))
    return _result("duality.w_maximizer", worst, tol.PROP4_TOL)


def check_duality_prop5(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3):
        family = mub.build_mub_family(d)
        bases = list(family.bases) + [mub.computational_basis(d)]
        for i in range(100):
            bp = materialize(
                StateSpec(
                    kind="pure_haar",
                    dims=(d, d),
                    seed=seed * 1_000_003 + 66 * 1009 + d * 101 + i,
                )
            )
            for f in _metrics():
                for basis in bases:
                    worst = max(
                        worst, duality.bipartite_complementarity_check(bp, f, basis)
                    )
    mixed = materialize(StateSpec(kind="werner", dims=(2, 2), param=0.5))
    try:
        duality.bipartite_complementarity_check(
            mixed, get("wy"), mub.computational_basis(2)
        )
        worst = max(worst, 1.0)
    except NotPure:
        pass
    return _result("duality.prop5", worst, tol.PROP5_TOL)


# --- states ---------------------------------------------------------------


def check_states_density(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    single = ((2,), (3,), (4,), (5,), (6,))
    double = ((2, 2), (2, 3), (3, 2), (5, 2))
    for kind in ("pure_haar", "mixed_ginibre"):
        for dims in single + double:
            for i in range(1000):
                spec = StateSpec(
                    kind=kind, dims=dims, seed=seed * 1_000_003 + 71 * 1009 + i
                )
                made = materialize(spec)
                rho = made.state if len(dims) == 2 else made
                worst = max(worst, frobenius(rho - dagger(rho)))
                worst = max(worst, abs(np.trace(rho) - 1.0))
    named = [
        StateSpec(kind="bell", dims=(2, 2)),
        StateSpec(kind="bell", dims=(3, 3)),
        StateSpec(kind="max_coherent", dims=(4,)),
    ]
    named += [StateSpec(kind="werner", dims=(2, 2), param=p) for p in np.linspace(0, 1, 11)]
    named += [StateSpec(kind="isotropic", dims=(2, 2), param=p) for p in np.linspace(0, 1, 11)]
    named += [StateSpec(kind="isotropic", dims=(3, 3), param=p) for p in (0.0, 0.5, 1.0)]
    for spec in named:
        made = materialize(spec)
        rho = made.state if len(spec.dims) == 2 else made
        worst = max(worst, frobenius(rho - dagger(rho)))
        worst = max(worst, abs(np.trace(rho) - 1.0))
    for bad in (
        StateSpec(kind="werner", dims=(2, 2), param=1.2),
        StateSpec(kind="isotropic", dims=(3, 3), param=-0.1),
        StateSpec(kind="werner", dims=(3, 3), param=0.5),
    ):
        try:
            materialize(bad)
            worst = max(worst, 1.0)
        except (InvalidSpec, UnsupportedDimension):
            pass
    bell = materialize(StateSpec(kind="bell", dims=(2, 2)))
    lam = np.sort(bell.decomposition.eigenvalues)[::-1]
    worst = max(worst, float(np.abs(lam - np.array([1.0, 0.0, 0.0, 0.0])).max()))
    singlet = materialize(StateSpec(kind="werner", dims=(2, 2), param=1.0))
    psi = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0)
    worst = max(worst, frobenius(singlet.state - np.outer(psi, psi)))
    twice = materialize(StateSpec(kind="mixed_ginibre", dims=(3,), seed=7))
    again = materialize(StateSpec(kind="mixed_ginibre", dims=(3,), seed=7))
    if not np.array_equal(twice, again):
        worst = max(worst, 1.0)
    return _result("states.density_invariants", worst, tol.DENSITY_TRACE_TOL)


def check_states_haar_unitarity(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (1, 2, 3, 5, 8):
        for i in range(50):
            u = haar_unitary(d, seed, i)
            worst = max(worst, frobenius(dagger(u) @ u - np.eye(d)))
        if not np.array_equal(haar_unitary(d, seed, 3), haar_unitary(d, seed, 3)):
            worst = max(worst, 1.0)
        if np.array_equal(haar_unitary(d, seed, 3), haar_unitary(d, seed, 4)) and d > 1:
            worst = max(worst, 1.0)
    return _result("states.haar_unitarity", worst, tol.ORTHONORMALITY_TOL)


def _matrix_mc_excess(
    mean_parts: tuple[np.ndarray, np.ndarray],
    sq_parts: tuple[np.ndarray, np.ndarray],
    n: int,
    target: np.ndarray,
) -> float:
    worst = 0.0
    for part, sq, goal in (
        (mean_parts[0], sq_parts[0], target.real),
        (mean_parts[1], sq_parts[1], target.imag),
    ):
        mean = part / n
        var = np.maximum(sq / n - mean**2, 0.0) * n / (n - 1)
        band = tol.MC_SIGMA_FACTOR * np.sqrt(var / n) + tol.MC_NOISE_FLOOR
        worst = max(worst, float(np.max(np.abs(mean - goal) - band)))
    return max(0.0, worst)


def check_states_haar_first_moment(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    n = 8192
    for d in (2, 3):
        x = _random_hermitian(_gen(seed, 72_000 + d), d)
        target = np.trace(x) / d * np.eye(d)
        sum_re = np.zeros((d, d))
        sum_im = np.zeros((d, d))
        sq_re = np.zeros((d, d))
        sq_im = np.zeros((d, d))
        for _, units in haar_chunks(d, seed, n, rng.DOMAIN_HAAR):
            rotated = np.matmul(units, np.matmul(x, units.conj().transpose(0, 2, 1)))
            sum_re += rotated.real.sum(axis=0)
            sum_im += rotated.imag.sum(axis=0)
            sq_re += (rotated.real**2).sum(axis=0)
            sq_im += (rotated.imag**2).sum(axis=0)
        worst = max(
            worst, _matrix_mc_excess((sum_re, sum_im), (sq_re, sq_im), n, target)
        )
    return _result("states.haar_first_moment", worst, 0.0)


def twirl_moment_mc_excess(
    d: int, a: np.ndarray, b: np.ndarray, x: np.ndarray, samples: int, seed: int
) -> float:
    """Excess of |MC - exact| beyond the 4-sigma band for the sandwiched
    second moment E[(U'AU) X (U'BU)]; shared with the acceptance suite."""
    target = correlation.twirl_second_moment(a, b, x)
    sum_re = np.zeros((d, d))
    sum_im = np.zeros((d, d))
    sq_re = np.zeros((d, d))
    sq_im = np.zeros((d, d))
    for _, units in haar_chunks(d, seed, samples, rng.DOMAIN_HAAR):
        ud = units.conj().transpose(0, 2, 1)
        left = np.matmul(ud, np.matmul(a, units))
        right = np.matmul(ud, np.matmul(b, units))
        sandwich = np.matmul(left, np.matmul(x, right))
        sum_re += sandwich.real.sum(axis=0)
        sum_im += sandwich.imag.sum(axis=0)
        sq_re += (sandwich.real**2).sum(axis=0)
        sq_im += (sandwich.imag**2).sum(axis=0)
    return _matrix_mc_excess((sum_re, sum_im), (sq_re, sq_im), samples, target)


def check_states_twirl_second_moment(seed: int, samples: int) -> CheckResult:
    worst = 0.0
    for d in (2, 3):
        for i in range(3):
            gen = _gen(seed, 73_000 + d * 10 + i)
            a = _random_hermitian(gen, d)
            b = _random_hermitian(gen, d)
            x = _random_hermitian(gen, d)
            worst = max(worst, twirl_moment_mc_excess(d, a, b, x, 8192, seed))
    return _result("states.twirl_second_moment", worst, 0.0)


# --- kernels --------------------------------------------------------------


def check_kernel_backends(seed: int, samples: int) -> CheckResult:
    """Compiled and pure-Python kernels must agree on identical inputs; a
    pure-Python-only build passes vacuously."""
    if _kernels.BACKEND != "compiled":
        return _result("kernels.backend_agreement", 0.0, tol.RECONSTRUCTION_TOL)
    from ._kernels import _core, fallback

    worst = 0.0
    for d in (2, 5, 16):
        for i in range(5):
            h = _random_hermitian(_gen(seed, 81_000 + d * 10 + i), d)
            h = hermitianize(h)
            w_c, v_c, ok_c = _core.jacobi_eigh(
                h.copy(), tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL
            )
            w_f, v_f, ok_f = fallback.jacobi_eigh(
                h.copy(), tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL
            )
            if ok_c != ok_f:
                worst = max(worst, 1.0)
            scale = max(1.0, frobenius(h))
            worst = max(
                worst,
                float(np.abs(np.sort(w_c) - np.sort(w_f)).max()) / scale,
            )
            worst = max(worst, frobenius((v_c * w_c) @ dagger(v_c) - h) / scale)
            gen = _gen(seed, 82_000 + d * 10 + i)
            s = np.abs(_random_hermitian(gen, d).real)
            m = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
            worst = max(
                worst,
                abs(
                    _core.pair_weighted_abs2_sum(s, m)
                    - fallback.pair_weighted_abs2_sum(s, m)
                ),
            )
            batch = np.stack([m, m.conj().T.copy()])
            diff = _core.pair_weighted_abs2_sum_batch(
                s, batch
            ) - fallback.pair_weighted_abs2_sum_batch(s, batch)
            worst = max(worst, float(np.abs(diff).max()))
            p = np.abs(m) ** 2
            diff = _core.projector_coherence_batch(
                s, p[None]
            ) - fallback.projector_coherence_batch(s, p[None])
            worst = max(worst, float(np.abs(diff).max()))
    return _result("kernels.backend_agreement", worst, tol.RECONSTRUCTION_TOL)


# --- registry -------------------------------------------------------------

CHECKS = (
    ("linalg.eigh_reconstruct", check_eigh_reconstruct),
    ("linalg.tensor_partial_trace", check_tensor_partial_trace),
    ("linalg.operator_basis", check_operator_basis),
    ("linalg.sqrt_psd", check_sqrt_psd),
    ("linalg.sqrt_degenerate", check_sqrt_degenerate),
    ("monotone.symmetry", check_monotone_symmetry),
    ("monotone.wy_closed_form", check_monotone_wy_closed_form),
    ("monotone.sld_closed_form", check_monotone_sld_closed_form),
    ("monotone.tilde_sum_range", check_tilde_sum_range),
    ("skew.dual_form", check_skew_dual_form),
    ("skew.convexity", check_skew_convexity),
    ("skew.commuting_zero", check_skew_commuting_zero),
    ("skew.degeneracy", check_skew_degeneracy),
    ("skew.unitary_observable", check_skew_unitary_observable),
    ("mub.certification", check_mub_certification),
    ("mub.swap_identity", check_mub_swap_identity),
    ("coherence.four_way", check_coherence_four_way),
    ("coherence.unitary_invariance", check_coherence_unitary_invariance),
    ("coherence.bounds", check_coherence_bounds),
    ("correlation.four_way", check_correlation_four_way),
    ("correlation.local_invariance", check_correlation_local_invariance),
    ("correlation.specials", check_correlation_specials),
    ("correlation.product_zero", check_correlation_product_zero),
    ("correlation.degenerate_remix", check_correlation_degenerate_remix),
    ("correlation.swap", check_correlation_swap),
    ("duality.prop4", check_duality_prop4),
    ("duality.prop3", check_duality_prop3),
    ("duality.convexity", check_duality_convexity),
    ("duality.permutation", check_duality_permutation),
    ("duality.w_maximizer", check_duality_w_maximizer),
    ("duality.prop5", check_duality_prop5),
    ("states.density_invariants", check_states_density),
    ("states.haar_unitarity", check_states_haar_unitarity),
    ("states.haar_first_moment", check_states_haar_first_moment),
    ("states.twirl_second_moment", check_states_twirl_second_moment),
    ("kernels.backend_agreement", check_kernel_backends),
)

CHECK_NAMES = tuple(name for name, _ in CHECKS)


def run(
    only: str | None = None,
    seed: int = 0,
    samples: int = tol.DEFAULT_SAMPLES,
    tol_override: float | None = None,
) -> list[CheckResult]:
    """Run the suite, or the subset whose names contain the substring `only`.

    A tolerance override replaces every check's own tolerance, letting a
    numerics audit ask "what would fail at 1e-15" without editing code.
    """
    results = []
    for name, fn in CHECKS:
        if only and only not in name:
            continue
        res = fn(seed=seed, samples=samples)
        if res.name != name:
            raise RuntimeError(f"check {name} reported as {res.name}")
        if tol_override is not None:
            res = CheckResult(
                res.name,
                res.max_residual,
                float(tol_override),
                res.max_residual <= tol_override,
            )
        results.append(res)
    return results
