"""Deterministic seeded state and unitary generators.

Every random draw is addressed by (seed, index) under the stream contract
in ``rng``, so any sample can be regenerated in isolation and parallel
evaluation cannot reorder results.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import rng
from .errors import FileError, InvalidSpec
from .linalg import as_matrix, eigh, validate_density

_RANDOM_KINDS = ("pure_haar", "mixed_ginibre")
_NAMED_KINDS = ("bell", "werner", "isotropic", "max_coherent", "product", "file")
KINDS = _RANDOM_KINDS + _NAMED_KINDS


@dataclass(frozen=True)
class StateSpec:
    """Recipe for a density matrix; materialize() turns it into numbers.

    dims is (d,) for a single system or (d_A, d_B) for a bipartite one.
    param carries the Werner p / isotropic F; factors the two single-system
    recipes of a product state; path the JSON file of a file state.
    """

    kind: str
    dims: tuple[int, ...] = ()
    seed: int = 0
    param: float | None = None
    factors: tuple["StateSpec", "StateSpec"] | None = None
    path: str | None = None


def _require_dims(spec: StateSpec, lengths: tuple[int, ...]) -> None:
    if len(spec.dims) not in lengths or any(d < 1 for d in spec.dims):
        raise InvalidSpec(
            f"{spec.kind} needs dims of length {lengths} with positive entries, "
            f"got {spec.dims}"
        )


def _total_dim(spec: StateSpec) -> int:
    out = 1
    for d in spec.dims:
        out *= d
    return out


def _gaussian_matrix(d: int, seed: int) -> np.ndarray:
    gen = rng.stream(seed, 0, rng.DOMAIN_STATES)
    return rng.complex_gaussians(gen, d * d).reshape(d, d)


def _pure_state_vector(d: int, seed: int) -> np.ndarray:
    gen = rng.stream(seed, 0, rng.DOMAIN_STATES)
    z = rng.complex_gaussians(gen, d)
    return z / np.linalg.norm(z)


def _singlet() -> np.ndarray:
    psi = np.zeros(4, dtype=np.complex128)
    psi[1] = 1.0 / np.sqrt(2.0)
    psi[2] = -1.0 / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def _max_entangled(d: int) -> np.ndarray:
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[:: d + 1] = 1.0 / np.sqrt(d)
    return np.outer(psi, psi.conj())


def _materialize_matrix(spec: StateSpec) -> tuple[np.ndarray, tuple[int, ...]]:
    """The density matrix and its (possibly file-supplied) dims."""
    kind = spec.kind
    if kind == "pure_haar":
        _require_dims(spec, (1, 2))
        d = _total_dim(spec)
        psi = _pure_state_vector(d, spec.seed)
        return np.outer(psi, psi.conj()), spec.dims
    if kind == "mixed_ginibre":
        _require_dims(spec, (1, 2))
        d = _total_dim(spec)
        g = _gaussian_matrix(d, spec.seed)
        rho = g @ g.conj().T
        return rho / np.trace(rho).real, spec.dims
    if kind == "bell":
        _require_dims(spec, (2,))
        if spec.dims[0] != spec.dims[1]:
            raise InvalidSpec(f"bell needs equal dims, got {spec.dims}")
        return _max_entangled(spec.dims[0]), spec.dims
    if kind == "werner":
        _require_dims(spec, (2,))
        if spec.dims != (2, 2):
            raise InvalidSpec(f"werner is defined on dims (2, 2), got {spec.dims}")
        p = spec.param
        if p is None or not 0.0 <= p <= 1.0:
            raise InvalidSpec(f"werner parameter p must lie in [0, 1], got {p}")
        return p * _singlet() + (1.0 - p) * np.eye(4, dtype=np.complex128) / 4.0, spec.dims
    if kind == "isotropic":
        _require_dims(spec, (2,))
        if spec.dims[0] != spec.dims[1] or spec.dims[0] < 2:
            raise InvalidSpec(f"isotropic needs dims (d, d) with d >= 2, got {spec.dims}")
        fparam = spec.param
        if fparam is None or not 0.0 <= fparam <= 1.0:
            raise InvalidSpec(f"isotropic parameter F must lie in [0, 1], got {fparam}")
        d = spec.dims[0]
        proj = _max_entangled(d)
        rest = (np.eye(d * d, dtype=np.complex128) - proj) / (d * d - 1.0)
        return fparam * proj + (1.0 - fparam) * rest, spec.dims
    if kind == "max_coherent":
        _require_dims(spec, (1,))
        d = spec.dims[0]
        psi = np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)
        return np.outer(psi, psi.conj()), spec.dims
    if kind == "product":
        if spec.factors is None or len(spec.factors) != 2:
            raise InvalidSpec("product needs exactly two factor specs")
        mats = []
        for factor in spec.factors:
            m, fdims = _materialize_matrix(factor)
            if len(fdims) != 1:
                raise InvalidSpec("product factors must be single-system specs")
            mats.append(m)
        dims = (mats[0].shape[0], mats[1].shape[0])
        if spec.dims and spec.dims != dims:
            raise InvalidSpec(f"product dims {spec.dims} != factor dims {dims}")
        return np.kron(mats[0], mats[1]), dims
    if kind == "file":
        if not spec.path:
            raise InvalidSpec("file kind needs a path")
        try:
            with open(spec.path) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise FileError(f"cannot read state file {spec.path}: {exc}") from exc
        return _state_from_json_dict(obj, spec)
    raise InvalidSpec(f"unknown state kind {spec.kind!r}; known: {KINDS}")


def _state_from_json_dict(obj, spec: StateSpec) -> tuple[np.ndarray, tuple[int, ...]]:
    if not isinstance(obj, dict) or "re" not in obj or "im" not in obj:
        raise FileError(f"state file {spec.path} lacks re/im arrays")
    dims = tuple(int(x) for x in obj.get("dims", spec.dims or ()))
    if len(dims) not in (1, 2):
        raise FileError(f"state file {spec.path} has dims {dims}; need [d] or [dA, dB]")
    if spec.dims and tuple(spec.dims) != dims:
        raise InvalidSpec(f"spec dims {spec.dims} != file dims {dims}")
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    total = int(np.prod(dims))
    if re.shape != (total, total) or im.shape != (total, total):
        raise FileError(
            f"state file {spec.path} arrays have shape {re.shape}, expected {(total, total)}"
        )
    return re + 1j * im, dims


def materialize(spec: StateSpec):
    """Build the state: an ndarray for (d,) dims, a BipartiteState for (dA, dB).

    Deterministic for a fixed spec, including its seed; all outputs pass the
    density-matrix invariants (validated here, not assumed).
    """
    rho, dims = _materialize_matrix(spec)
    rho = as_matrix(rho)
    if len(dims) == 2:
        from .correlation import BipartiteState  # deferred: correlation imports states

        return BipartiteState.create(rho, dims[0], dims[1])
    validate_density(rho, eigh(rho))
    return rho


def state_to_json_dict(rho: np.ndarray, dims: tuple[int, ...]) -> dict:
    rho = as_matrix(rho)
    return {"dims": list(dims), "re": rho.real.tolist(), "im": rho.imag.tolist()}


def _qr_phase_fix(z: np.ndarray) -> np.ndarray:
    """QR-orthonormalize a (stack of) Ginibre matrices into Haar unitaries.

    Each column is scaled by the phase making the matching triangular
    diagonal entry real positive, which removes the QR gauge bias.
    """
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    mag = np.abs(diag)
    phase = np.where(mag > 0.0, diag / np.where(mag > 0.0, mag, 1.0), 1.0)
    return q * phase[..., None, :]


def haar_unitary_batch(
    d: int, seed: int, count: int, domain: int = rng.DOMAIN_HAAR, start_index: int = 0
) -> np.ndarray:
    """Haar unitaries for stream indices start_index .. start_index+count-1."""
    z = np.empty((count, d, d), dtype=np.complex128)
    for i in range(count):
        gen = rng.stream(seed, start_index + i, domain)
        z[i] = rng.complex_gaussians(gen, d * d).reshape(d, d)
    return _qr_phase_fix(z)


@lru_cache(maxsize=32)
def _haar_batch_cached(
    d: int, seed: int, count: int, domain: int, start_index: int
) -> np.ndarray:
    out = haar_unitary_batch(d, seed, count, domain, start_index)
    out.flags.writeable = False
    return out


def haar_chunks(d: int, seed: int, samples: int, domain: int, chunk: int = 512):
    """Yield (start_index, unitaries) chunks covering range(samples)."""
    for start in range(0, samples, chunk):
        n = min(chunk, samples - start)
        yield start, _haar_batch_cached(d, seed, n, domain, start)


def haar_unitary(d: int, seed: int, index: int = 0) -> np.ndarray:
    """One Haar-distributed unitary from stream (seed, index)."""
    if d < 1:
        raise InvalidSpec(f"haar_unitary needs d >= 1, got {d}")
    return haar_unitary_batch(d, seed, 1, rng.DOMAIN_HAAR, index)[0]
