"""Symmetric normalized operator monotone functions and their kernels.

A registered function f selects one member of the regular-metric family;
the kernels c_f(x, y) = 1/(y f(x/y)) and

    tilde_c(x, y) = [(x + y) - (x - y)^2 c_f(x, y) f0] / 2

turn it into the eigenvalue-pair weights behind every spectral formula.
The boundary values tilde_c(x, 0) = tilde_c(0, 0) = 0 implement the
analytic limit y f(x/y) -> x f0, which holds exactly when f0 > 0, making
rank-deficient states first-class inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tolerances as tol
from .errors import DomainError, InvalidSpectrum, UnknownMetric

_SYMMETRY_PROBES = (0.1, 0.5, 2.0, 10.0)


@dataclass(frozen=True)
class MonotoneFunction:
    """A symmetric normalized operator monotone function with its limit at 0.

    Args:
        name: registry identifier (e.g. "wy", "sld").
        fn: elementwise map t in (0, inf) -> f(t) > 0; must accept ndarrays.
        f0: lim_{t->0+} f(t), supplied explicitly so hot paths never take
            numerical limits; validated against fn(1e-12) at registration.
    """

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    f0: float

    def __call__(self, t):
        return self.fn(t)


def _validate(f: MonotoneFunction) -> None:
    if f.f0 <= 0.0:
        raise DomainError(f"{f.name}: f0 = {f.f0} must be positive (regular metric)")
    if abs(float(f.fn(1.0)) - 1.0) > tol.F_AT_ONE_TOL:
        raise DomainError(f"{f.name}: f(1) = {f.fn(1.0)} != 1")
    for t in _SYMMETRY_PROBES:
        lhs = float(f.fn(t))
        rhs = t * float(f.fn(1.0 / t))
        if abs(lhs - rhs) > tol.F_SYMMETRY_TOL:
            raise DomainError(f"{f.name}: symmetry f(t) = t f(1/t) fails at t = {t}")
    if abs(float(f.fn(1e-12)) - f.f0) > tol.F0_CONSISTENCY_TOL:
        raise DomainError(f"{f.name}: f0 = {f.f0} inconsistent with f(1e-12)")


_REGISTRY: dict[str, MonotoneFunction] = {}


def register(f: MonotoneFunction) -> MonotoneFunction:
    """Validate and add a monotone function to the registry."""
    _validate(f)
    if f.name in _REGISTRY:
        raise DomainError(f"monotone function {f.name!r} already registered")
    _REGISTRY[f.name] = f
    return f


def get(name: str) -> MonotoneFunction:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownMetric(
            f"no monotone function named {name!r}; registered: {sorted(_REGISTRY)}"
        ) from None


def names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


WY = register(
    MonotoneFunction("wy", lambda t: 0.25 * (1.0 + np.sqrt(t)) ** 2, 0.25)
)
SLD = register(MonotoneFunction("sld", lambda t: 0.5 * (1.0 + t), 0.5))


def c_f(f: MonotoneFunction, x, y):
    """Metric kernel c_f(x, y) = 1/(y f(x/y)) for x, y > 0.

    Evaluated as 1/(max f(min/max)) — identical by f-symmetry, but immune
    to overflow when the two eigenvalues differ by hundreds of orders.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise DomainError("c_f requires strictly positive arguments")
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    out = 1.0 / (hi * np.asarray(f.fn(lo / hi), dtype=float))
    return float(out) if out.ndim == 0 else out


def tilde_c(f: MonotoneFunction, x, y):
    """Mean kernel tilde_c(x, y) for x, y >= 0, with tilde_c(x, 0) = 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0.0) or np.any(y < 0.0):
        raise DomainError("tilde_c requires nonnegative arguments")
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    # evaluate the kernel on a safe surrogate where lo == 0, then mask
    safe_lo = np.where(lo > 0.0, lo, 1.0)
    safe_hi = np.where(lo > 0.0, hi, 1.0)
    kern = 1.0 / (safe_hi * np.asarray(f.fn(safe_lo / safe_hi), dtype=float))
    val = 0.5 * ((x + y) - (x - y) ** 2 * kern * f.f0)
    out = np.where(lo > 0.0, val, 0.0)
    return float(out) if out.ndim == 0 else out


def tilde_matrix(f: MonotoneFunction, spectrum: np.ndarray) -> np.ndarray:
    """Matrix of tilde_c(p_k, p_l) over all ordered eigenvalue pairs."""
    p = np.asarray(spectrum, dtype=float)
    return tilde_c(f, p[:, None], p[None, :])


def spectrum_tilde_sum(f: MonotoneFunction, spectrum) -> float:
    """Sum of tilde_c(p_k, p_l) over all ordered pairs (with multiplicity).

    Lies in [1, d]: 1 exactly on pure spectra, d on the maximally mixed one.
    For the WY function it equals (sum_k sqrt(p_k))^2.
    """
    p = np.asarray(spectrum, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidSpectrum(f"spectrum must be a nonempty vector, got shape {p.shape}")
    if p.min() < -tol.EIGENVALUE_CLAMP:
        raise InvalidSpectrum(f"spectrum entry {p.min()} < -{tol.EIGENVALUE_CLAMP}")
    if abs(p.sum() - 1.0) > tol.SPECTRUM_SUM_TOL:
        raise InvalidSpectrum(f"spectrum sums to {p.sum()}, not 1")
    return float(tilde_matrix(f, np.clip(p, 0.0, None)).sum())
