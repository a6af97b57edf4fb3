"""Metric-adjusted skew information.

The primary evaluation path rewrites the trace form as a pair-weighted sum
over the state's eigenbasis:

    I(rho, A) = sum_{k,l} [ (p_k + p_l)/2 - tilde_c(p_k, p_l) ] |<k|A|l>|^2

which is boundary-safe at zero eigenvalues and manifestly nonnegative
because each weight is (arithmetic mean) - tilde_c >= 0.  The eigenbasis
ratio form is retained purely as an independent verification oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, monotone, tolerances as tol
from .errors import DimensionMismatch, NumericalError
from .linalg import (
    SpectralDecomposition,
    as_matrix,
    effective_spectrum,
    eigh,
    validate_density,
)
from .monotone import MonotoneFunction


def pair_weight_matrix(f: MonotoneFunction, spectrum: np.ndarray) -> np.ndarray:
    """Weights (p_k + p_l)/2 - tilde_c(p_k, p_l), clamped at zero.

    The arithmetic mean dominates tilde_c for every regular metric, so any
    negative entry is pure round-off.
    """
    p = effective_spectrum(spectrum)
    s = 0.5 * (p[:, None] + p[None, :]) - monotone.tilde_matrix(f, p)
    return np.clip(s, 0.0, None)


@dataclass(frozen=True)
class SkewContext:
    """A density matrix with its cached decomposition and metric weights."""

    state: np.ndarray
    decomposition: SpectralDecomposition
    metric: MonotoneFunction
    pair_weights: np.ndarray

    @property
    def dim(self) -> int:
        return self.decomposition.dim

    @classmethod
    def create(cls, rho, metric: MonotoneFunction) -> "SkewContext":
        rho = as_matrix(rho)
        dec = eigh(rho)
        validate_density(rho, dec)
        return cls.from_decomposition(rho, dec, metric)

    @classmethod
    def from_decomposition(
        cls, rho: np.ndarray, dec: SpectralDecomposition, metric: MonotoneFunction
    ) -> "SkewContext":
        return cls(rho, dec, metric, pair_weight_matrix(metric, dec.eigenvalues))


def _clamp_result(value: float) -> float:
    if value < -tol.EIGENVALUE_CLAMP:
        raise NumericalError(f"skew information came out {value} < -1e-10")
    return max(value, 0.0)


def skew_information(ctx: SkewContext, a) -> float:
    """Metric-adjusted skew information of an arbitrary operator A.

    Nonnegative; zero exactly when A commutes with the state.
    """
    a = as_matrix(a)
    if a.shape[0] != ctx.dim:
        raise DimensionMismatch(f"operator dim {a.shape[0]} != state dim {ctx.dim}")
    v = ctx.decomposition.eigenvectors
    b = v.conj().T @ a @ v
    return _clamp_result(_kernels.pair_weighted_abs2_sum(ctx.pair_weights, b))


def skew_information_ratio_form(ctx: SkewContext, a) -> float:
    """Verification oracle: the eigenbasis ratio form of the same quantity.

    I = (f0/2) sum_{k,l} (p_k - p_l)^2 c_f(p_k, p_l) |<k|A|l>|^2, with the
    pair terms where exactly one eigenvalue vanishes evaluated via their
    limit (p/2) and doubly-vanishing pairs contributing zero.
    """
    a = as_matrix(a)
    if a.shape[0] != ctx.dim:
        raise DimensionMismatch(f"operator dim {a.shape[0]} != state dim {ctx.dim}")
    f = ctx.metric
    p = effective_spectrum(ctx.decomposition.eigenvalues)
    x = p[:, None]
    y = p[None, :]
    both = (x > 0.0) & (y > 0.0)
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    safe_hi = np.where(both, hi, 1.0)
    safe_lo = np.where(both, lo, 1.0)
    kern = 1.0 / (safe_hi * np.asarray(f.fn(safe_lo / safe_hi), dtype=float))
    weights = np.where(
        both,
        0.5 * f.f0 * (x - y) ** 2 * kern,
        0.5 * np.maximum(x, y),  # exactly one of the pair is zero -> p/2; both -> 0
    )
    v = ctx.decomposition.eigenvectors
    b = v.conj().T @ a @ v
    return _clamp_result(_kernels.pair_weighted_abs2_sum(weights, b))
