"""Bipartite correlation measures built on local-basis coherence.

The per-basis correlation is the coherence of the joint state with respect
to a local measurement on side A minus the coherence of the A marginal with
respect to the same basis.  Averaging over bases admits a closed form in
terms of the spectral data of the joint state, which must agree with the
MUB, operator-basis, Haar Monte-Carlo, and twirl routes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, rng, states, tolerances as tol
from .coherence import McEstimate, coherence_wrt_basis
from .errors import (
    DimensionMismatch,
    InvalidSampleCount,
    InvalidSpec,
    UnsupportedDimension,
)
from .linalg import (
    SpectralDecomposition,
    as_matrix,
    clamped_spectrum,
    eigh,
    hermitian_operator_basis,
    partial_trace,
    sqrt_psd,
    tensor,
    validate_density,
)
from .monotone import MonotoneFunction, spectrum_tilde_sum, tilde_matrix
from .mub import MeasurementBasis, MubFamily
from .skew import SkewContext, pair_weight_matrix, skew_information


@dataclass(frozen=True)
class BipartiteState:
    """A validated joint state with its spectral data and B-side conditionals.

    ``eigenmatrices[k]`` is eigenvector k reshaped to (d_a, d_b); for k in
    ``support`` (eigenvalues above the support cutoff), ``sigma_b`` holds the
    normalized B-side operator Tr_A |psi_k><psi_k| scaled by nothing — the
    eigenvector itself carries unit norm, so each sigma has unit trace.
    """

    d_a: int
    d_b: int
    state: np.ndarray
    decomposition: SpectralDecomposition
    eigenmatrices: np.ndarray
    support: np.ndarray
    sigma_b: np.ndarray
    marginal_a: np.ndarray
    marginal_decomposition: SpectralDecomposition

    @classmethod
    def create(cls, rho: np.ndarray, d_a: int, d_b: int) -> "BipartiteState":
        if d_a < 1 or d_b < 1:
            raise InvalidSpec(f"subsystem dims must be positive, got {d_a}x{d_b}")
        rho = as_matrix(rho)
        if rho.shape[0] != d_a * d_b:
            raise DimensionMismatch(
                f"state dim {rho.shape[0]} != {d_a}*{d_b}"
            )
        dec = eigh(rho)
        validate_density(rho, dec)
        dim = d_a * d_b
        mats = np.ascontiguousarray(
            dec.eigenvectors.T.reshape(dim, d_a, d_b)
        )
        support = np.flatnonzero(dec.eigenvalues > tol.SUPPORT_CUTOFF)
        kept = mats[support]
        sigma_b = np.einsum("kab,kac->kbc", kept, kept.conj())
        marginal = partial_trace(rho, d_a, d_b, keep="A")
        mdec = eigh(marginal)
        validate_density(marginal, mdec)
        return cls(
            d_a=d_a,
            d_b=d_b,
            state=rho,
            decomposition=dec,
            eigenmatrices=mats,
            support=support,
            sigma_b=sigma_b,
            marginal_a=marginal,
            marginal_decomposition=mdec,
        )

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b

    def marginal_context(self, metric: MonotoneFunction) -> SkewContext:
        return SkewContext.from_decomposition(
            self.marginal_a, self.marginal_decomposition, metric
        )

    def joint_context(self, metric: MonotoneFunction) -> SkewContext:
        return SkewContext.from_decomposition(self.state, self.decomposition, metric)


def swap_parties(bp: BipartiteState) -> BipartiteState:
    """The same state with the roles of A and B exchanged."""
    d_a, d_b = bp.d_a, bp.d_b
    swapped = (
        bp.state.reshape(d_a, d_b, d_a, d_b)
        .transpose(1, 0, 3, 2)
        .reshape(bp.dim, bp.dim)
    )
    return BipartiteState.create(swapped, d_b, d_a)


def local_coherence(
    bp: BipartiteState, metric: MonotoneFunction, basis: MeasurementBasis
) -> float:
    """Coherence of the joint state w.r.t. the local measurement basis x identity.

    Computed directly from the (d_a x d_b)-shaped eigenvectors: for basis
    vector i the matrix element <psi_k|(P_i x 1)|psi_l> is an inner product
    of B-side rows, so no dim^2 x dim^2 projectors are ever formed.
    """
    if basis.dim != bp.d_a:
        raise DimensionMismatch(f"basis dim {basis.dim} != A dim {bp.d_a}")
    weights = pair_weight_matrix(metric, bp.decomposition.eigenvalues)
    rows = np.einsum("ai,lab->ilb", basis.vectors.conj(), bp.eigenmatrices)
    elements = np.einsum("ikb,ilb->ikl", rows.conj(), rows)
    elements = np.ascontiguousarray(elements)
    per_vector = _kernels.pair_weighted_abs2_sum_batch(weights, elements)
    return float(per_vector.sum())


def correlation_wrt_basis(
    bp: BipartiteState, metric: MonotoneFunction, basis: MeasurementBasis
) -> float:
    """Joint local coherence minus marginal coherence for one basis."""
    joint = local_coherence(bp, metric, basis)
    marginal = coherence_wrt_basis(bp.marginal_context(metric), basis)
    return joint - marginal


def average_correlation_closed(bp: BipartiteState, metric: MonotoneFunction) -> float:
    """Closed form: marginal tilde sum minus the sigma_b-weighted pair sum.

    [T_A - sum_{k,l} tilde_c(lam_k, lam_l) Tr(sigma_k sigma_l)] / (d_a + 1),
    the pair sum running over the support of the joint spectrum.
    """
    t_a = spectrum_tilde_sum(
        metric, clamped_spectrum(bp.marginal_decomposition)
    )
    lam = bp.decomposition.eigenvalues[bp.support]
    weights = tilde_matrix(metric, lam)
    gram = np.einsum("kab,lba->kl", bp.sigma_b, bp.sigma_b).real
    return float(t_a - (weights * gram).sum()) / (bp.d_a + 1.0)


def average_correlation_mub(
    bp: BipartiteState, metric: MonotoneFunction, family: MubFamily
) -> float:
    """Mean per-basis correlation over a complete MUB family on side A."""
    if family.dim != bp.d_a:
        raise DimensionMismatch(f"family dim {family.dim} != A dim {bp.d_a}")
    total = sum(correlation_wrt_basis(bp, metric, b) for b in family.bases)
    return total / (bp.d_a + 1.0)


def average_correlation_operator_basis(
    bp: BipartiteState, metric: MonotoneFunction
) -> float:
    """Operator-basis route: skew sums for G_i x 1 on the joint state minus
    G_i on the marginal, over a Hermitian orthonormal basis of side A."""
    joint_ctx = bp.joint_context(metric)
    marg_ctx = bp.marginal_context(metric)
    eye_b = np.eye(bp.d_b, dtype=complex)
    total = 0.0
    for g in hermitian_operator_basis(bp.d_a):
        total += skew_information(joint_ctx, tensor(g, eye_b))
        total -= skew_information(marg_ctx, g)
    return total / (bp.d_a + 1.0)


def average_correlation_haar_mc(
    bp: BipartiteState, metric: MonotoneFunction, samples: int, seed: int
) -> McEstimate:
    """Monte-Carlo Haar average of the per-basis correlation.

    Each sample rotates the computational basis of side A by a Haar unitary
    and evaluates the joint-minus-marginal difference exactly.
    """
    if samples < 2:
        raise InvalidSampleCount(f"samples must be >= 2, got {samples}")
    d_a = bp.d_a
    weights = pair_weight_matrix(metric, bp.decomposition.eigenvalues)
    marg_ctx = bp.marginal_context(metric)
    v_a = marg_ctx.decomposition.eigenvectors
    vals = np.empty(samples, dtype=float)
    for start, units in states.haar_chunks(
        d_a, seed, samples, rng.DOMAIN_CORRELATION_MC
    ):
        n = units.shape[0]
        rows = np.einsum("sai,lab->silb", units.conj(), bp.eigenmatrices)
        elements = np.einsum("sikb,silb->sikl", rows.conj(), rows)
        flat = np.ascontiguousarray(elements.reshape(n * d_a, bp.dim, bp.dim))
        joint = (
            _kernels.pair_weighted_abs2_sum_batch(weights, flat)
            .reshape(n, d_a)
            .sum(axis=1)
        )
        overlaps = np.matmul(v_a.conj().T, units)
        marginal = _kernels.projector_coherence_batch(
            marg_ctx.pair_weights, np.abs(overlaps) ** 2
        )
        vals[start : start + n] = joint - marginal
    return McEstimate(
        mean=float(vals.mean()),
        std_error=float(vals.std(ddof=1) / np.sqrt(samples)),
        samples=samples,
    )


def twirl_second_moment(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Haar average of A U X U^dag B as an explicit two-coefficient formula.

    E[Tr-contracted second moment] = c1 Tr(X) I + c2 X with the standard
    Weingarten coefficients; undefined at d = 1.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    x = as_matrix(x)
    d = a.shape[0]
    if b.shape[0] != d or x.shape[0] != d:
        raise DimensionMismatch("all three operators must share one dimension")
    if d == 1:
        raise UnsupportedDimension("second-moment formula requires dim >= 2")
    tr_a = np.trace(a)
    tr_b = np.trace(b)
    tr_ab = np.trace(a @ b)
    den = d * (d * d - 1.0)
    c1 = (d * tr_ab - tr_a * tr_b) / den
    c2 = (d * tr_a * tr_b - tr_ab) / den
    return c1 * np.trace(x) * np.eye(d, dtype=complex) + c2 * x


def average_correlation_twirl(
    bp: BipartiteState,
    metric: MonotoneFunction,
    mode: str = "exact",
    samples: int = tol.DEFAULT_SAMPLES,
    seed: int = 0,
) -> float | McEstimate:
    """Twirl route: d_a/(d_a+1) times the gap between the Haar-averaged joint
    and marginal skew informations of a rotated rank-one observable.

    ``mode="exact"`` integrates the first moment analytically; ``mode="mc"``
    estimates the same gap sample by sample.
    """
    if mode == "exact":
        return _twirl_exact(bp, metric)
    if mode == "mc":
        return _twirl_mc(bp, metric, samples, seed)
    raise InvalidSpec(f"unknown twirl mode {mode!r}")


def _twirl_exact(bp: BipartiteState, metric: MonotoneFunction) -> float:
    d_a = bp.d_a
    lam = bp.decomposition.eigenvalues[bp.support]
    weights = tilde_matrix(metric, lam)
    kept = bp.eigenmatrices[bp.support]
    # N[l, k] = E_l E_k^dag is the A-side cross partial trace of |psi_l><psi_k|;
    # its squared Frobenius norm is the first-moment average of |<psi_k|(P x 1)|psi_l>|^2
    # over Haar projectors P, up to the 1/d_a normalization applied below.
    cross = np.einsum("lab,kcb->lkac", kept, kept.conj())
    norms = np.einsum("lkac,lkac->lk", cross, cross.conj()).real
    avg_joint = 1.0 - (weights * norms).sum() / d_a
    t_a = spectrum_tilde_sum(metric, clamped_spectrum(bp.marginal_decomposition))
    avg_marg = 1.0 - t_a / d_a
    return d_a / (d_a + 1.0) * float(avg_joint - avg_marg)


def _twirl_mc(
    bp: BipartiteState, metric: MonotoneFunction, samples: int, seed: int
) -> McEstimate:
    if samples < 2:
        raise InvalidSampleCount(f"samples must be >= 2, got {samples}")
    d_a = bp.d_a
    weights = pair_weight_matrix(metric, bp.decomposition.eigenvalues)
    marg_ctx = bp.marginal_context(metric)
    v_a = marg_ctx.decomposition.eigenvectors
    scale = d_a / (d_a + 1.0)
    vals = np.empty(samples, dtype=float)
    for start, units in states.haar_chunks(d_a, seed, samples, rng.DOMAIN_TWIRL_MC):
        n = units.shape[0]
        elements = np.einsum(
            "kab,sac,lcb->skl", bp.eigenmatrices.conj(), units, bp.eigenmatrices
        )
        joint = _kernels.pair_weighted_abs2_sum_batch(
            weights, np.ascontiguousarray(elements)
        )
        rotated = np.matmul(v_a.conj().T, np.matmul(units, v_a))
        marginal = _kernels.pair_weighted_abs2_sum_batch(
            marg_ctx.pair_weights, np.ascontiguousarray(rotated)
        )
        vals[start : start + n] = scale * (joint - marginal)
    return McEstimate(
        mean=float(vals.mean()),
        std_error=float(vals.std(ddof=1) / np.sqrt(samples)),
        samples=samples,
    )


def average_correlation_wy_special(bp: BipartiteState) -> float:
    """Wigner-Yanase shortcut through the square root of the joint state.

    [(Tr sqrt(rho^A))^2 - Tr((Tr_A sqrt(rho^AB))^2)] / (d_a + 1); agrees with
    the closed form for the WY metric without touching the eigendecomposition
    pair sums.
    """
    root_joint = sqrt_psd(bp.state)
    root_marg = sqrt_psd(bp.marginal_a)
    reduced = partial_trace(root_joint, bp.d_a, bp.d_b, keep="B")
    lead = np.trace(root_marg).real ** 2
    tail = np.trace(reduced @ reduced).real
    return float(lead - tail) / (bp.d_a + 1.0)


def average_correlation_fisher_special(bp: BipartiteState) -> float:
    """Harmonic-mean shortcut for the SLD metric.

    Both pair sums use 2xy/(x+y) with vanishing-denominator pairs contributing
    zero; the joint sum is weighted by the sigma_b overlap Gram matrix.
    """
    p = clamped_spectrum(bp.marginal_decomposition)
    px, py = np.meshgrid(p, p, indexing="ij")
    den = px + py
    marg_sum = np.where(den > 0.0, 2.0 * px * py / np.where(den > 0.0, den, 1.0), 0.0)
    lam = bp.decomposition.eigenvalues[bp.support]
    lx, ly = np.meshgrid(lam, lam, indexing="ij")
    lden = lx + ly
    joint_weights = np.where(
        lden > 0.0, 2.0 * lx * ly / np.where(lden > 0.0, lden, 1.0), 0.0
    )
    gram = np.einsum("kab,lba->kl", bp.sigma_b, bp.sigma_b).real
    return float(marg_sum.sum() - (joint_weights * gram).sum()) / (bp.d_a + 1.0)


@dataclass(frozen=True)
class CorrelationReport:
    """The averaging routes for one bipartite state and metric."""

    closed_form: float
    mub_average: float | None
    operator_basis_average: float
    twirl_exact: float
    haar_mc: McEstimate | None


def build_correlation_report(
    bp: BipartiteState,
    metric: MonotoneFunction,
    family: MubFamily | None = None,
    samples: int = tol.DEFAULT_SAMPLES,
    seed: int = 0,
) -> CorrelationReport:
    """All independent routes; the MUB entry is None when no family is given."""
    mub_avg = None if family is None else average_correlation_mub(bp, metric, family)
    return CorrelationReport(
        closed_form=average_correlation_closed(bp, metric),
        mub_average=mub_avg,
        operator_basis_average=average_correlation_operator_basis(bp, metric),
        twirl_exact=float(average_correlation_twirl(bp, metric, mode="exact")),
        haar_mc=average_correlation_haar_mc(bp, metric, samples, seed),
    )
