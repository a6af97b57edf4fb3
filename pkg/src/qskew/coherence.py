"""Basis-dependent coherence and the three single-system averages.

The closed form (d - T)/(d + 1), with T the tilde_c pair sum over the
spectrum, must coincide with the MUB average, the operator-basis average,
and the Haar average; each route is computed independently so the equality
stays a real cross-check rather than a tautology.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, rng, states, tolerances as tol
from .errors import DimensionMismatch, InvalidSampleCount
from .linalg import clamped_spectrum, hermitian_operator_basis
from .monotone import MonotoneFunction, spectrum_tilde_sum
from .mub import MeasurementBasis, MubFamily
from .skew import SkewContext, skew_information


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int


@dataclass(frozen=True)
class AverageReport:
    """The four routes to one number, side by side."""

    closed_form: float
    mub_average: float | None
    operator_basis_average: float
    haar_mc: McEstimate | None


def coherence_wrt_basis(ctx: SkewContext, basis: MeasurementBasis) -> float:
    """Coherence of the state relative to a rank-one projective measurement.

    Sum of the skew informations of the basis projectors; zero exactly when
    the state is diagonal in the basis.
    """
    if basis.dim != ctx.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} != state dim {ctx.dim}")
    overlaps = ctx.decomposition.eigenvectors.conj().T @ basis.vectors
    p = np.abs(overlaps) ** 2
    return float(_kernels.projector_coherence_batch(ctx.pair_weights, p[None])[0])


def average_coherence_closed(ctx: SkewContext) -> float:
    """(d - T)/(d + 1) with T the spectrum tilde_c pair sum."""
    d = ctx.dim
    t = spectrum_tilde_sum(ctx.metric, clamped_spectrum(ctx.decomposition))
    return (d - t) / (d + 1.0)


def average_coherence_mub(ctx: SkewContext, family: MubFamily) -> float:
    """Mean coherence over a complete family of d+1 mutually unbiased bases."""
    if family.dim != ctx.dim:
        raise DimensionMismatch(f"family dim {family.dim} != state dim {ctx.dim}")
    total = sum(coherence_wrt_basis(ctx, b) for b in family.bases)
    return total / (ctx.dim + 1.0)


def average_coherence_operator_basis(ctx: SkewContext) -> float:
    """Skew-information sum over a Hermitian operator orthonormal basis.

    Invariant under the choice of basis; divided by d+1 it reproduces the
    closed form.
    """
    basis = hermitian_operator_basis(ctx.dim)
    total = sum(skew_information(ctx, g) for g in basis)
    return total / (ctx.dim + 1.0)


def average_coherence_haar_mc(ctx: SkewContext, samples: int, seed: int) -> McEstimate:
    """Monte-Carlo Haar average of coherence over rotated bases.

    Sample i draws its basis from stream (seed, i); the reduction runs in
    index order, so results are bit-reproducible and order-independent.
    """
    if samples < 2:
        raise InvalidSampleCount(f"samples must be >= 2, got {samples}")
    d = ctx.dim
    vdag = ctx.decomposition.eigenvectors.conj().T
    vals = np.empty(samples, dtype=float)
    for start, units in states.haar_chunks(d, seed, samples, rng.DOMAIN_COHERENCE_MC):
        overlaps = np.matmul(vdag, units)
        p = np.abs(overlaps) ** 2
        vals[start : start + units.shape[0]] = _kernels.projector_coherence_batch(
            ctx.pair_weights, p
        )
    return McEstimate(
        mean=float(vals.mean()),
        std_error=float(vals.std(ddof=1) / np.sqrt(samples)),
        samples=samples,
    )


def build_average_report(
    ctx: SkewContext,
    family: MubFamily | None = None,
    samples: int = tol.DEFAULT_SAMPLES,
    seed: int = 0,
) -> AverageReport:
    """All four averaging routes; the MUB entry is None when no family is given."""
    return AverageReport(
        closed_form=average_coherence_closed(ctx),
        mub_average=None if family is None else average_coherence_mub(ctx, family),
        operator_basis_average=average_coherence_operator_basis(ctx),
        haar_mc=average_coherence_haar_mc(ctx, samples, seed),
    )
