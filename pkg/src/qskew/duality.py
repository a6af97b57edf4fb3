"""Wave-particle complementarity identities for a fixed measurement basis.

Wave feature = coherence w.r.t. the basis, particle feature = skew-
information sum over the off-diagonal basis ladder operators, and the
entropy-like remainder depends only on the spectrum; together the three
saturate d - 1 exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .coherence import coherence_wrt_basis
from .correlation import BipartiteState, average_correlation_closed
from .errors import NotPure
from .linalg import clamped_spectrum, partial_trace
from .monotone import MonotoneFunction, spectrum_tilde_sum
from .mub import MeasurementBasis
from .skew import SkewContext, skew_information


@dataclass(frozen=True)
class DualityReport:
    wave: float
    particle: float
    f_entropy: float
    dim: int
    residual_prop4: float

    @property
    def total(self) -> float:
        return self.wave + self.particle + self.f_entropy


def wave_feature(ctx: SkewContext, basis: MeasurementBasis) -> float:
    """Coherence of the state relative to the basis projectors."""
    return coherence_wrt_basis(ctx, basis)


def particle_feature(ctx: SkewContext, basis: MeasurementBasis) -> float:
    """Skew-information sum over the off-diagonal operators |u_i><u_j|, i != j.

    Each term is evaluated as a direct skew-information call on the ladder
    operator, keeping this route independent of the wave-side computation.
    """
    d = ctx.dim
    total = 0.0
    for i in range(d):
        u_i = basis.vectors[:, i]
        for j in range(d):
            if i == j:
                continue
            ladder = np.outer(u_i, basis.vectors[:, j].conj())
            total += skew_information(ctx, ladder)
    return total


def f_entropy(spectrum: np.ndarray, metric: MonotoneFunction) -> float:
    """Spectrum-only remainder: the tilde_c pair sum minus one.

    Zero exactly for pure spectra, d - 1 at the maximally mixed spectrum;
    basis independence is structural because no state ever enters.
    """
    return float(spectrum_tilde_sum(metric, spectrum) - 1.0)


def complementarity_report(ctx: SkewContext, basis: MeasurementBasis) -> DualityReport:
    """Wave + particle + entropy-like term, with the d - 1 saturation residual."""
    w = wave_feature(ctx, basis)
    p = particle_feature(ctx, basis)
    s = f_entropy(clamped_spectrum(ctx.decomposition), ctx.metric)
    residual = abs(w + p + s - (ctx.dim - 1.0))
    return DualityReport(
        wave=w, particle=p, f_entropy=s, dim=ctx.dim, residual_prop4=residual
    )


def bipartite_complementarity_check(
    bp: BipartiteState, metric: MonotoneFunction, basis: MeasurementBasis
) -> float:
    """Residual of the pure-state identity tying the A-marginal duality pair to
    the average correlation: |W + P + (d_a + 1) Q - (d_a - purity of rho^B)|.

    Raises NotPure when the largest joint eigenvalue is not within tolerance
    of one, since the identity only holds for pure joint states.
    """
    top = float(bp.decomposition.eigenvalues[0])
    if top < 1.0 - tol.PURITY_PURE_TOL:
        raise NotPure(f"largest eigenvalue {top} is not within tolerance of 1")
    ctx_a = bp.marginal_context(metric)
    w = wave_feature(ctx_a, basis)
    p = particle_feature(ctx_a, basis)
    q = average_correlation_closed(bp, metric)
    rho_b = partial_trace(bp.state, bp.d_a, bp.d_b, keep="B")
    purity_b = float(np.trace(rho_b @ rho_b).real)
    return abs(w + p + (bp.d_a + 1.0) * q - (bp.d_a - purity_b))
