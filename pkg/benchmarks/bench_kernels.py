"""Timing comparison of the compiled kernel extension vs the NumPy fallback.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py [--repeats N]

Each kernel is cross-checked for agreement between the two backends before
timing, so a silent divergence shows up here as an error, not a fast lie.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qskew import tolerances as tol
from qskew._kernels import fallback

try:
    from qskew._kernels import _core
except ImportError:
    _core = None


def _hermitian(gen: np.random.Generator, d: int) -> np.ndarray:
    z = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return np.ascontiguousarray((z + z.conj().T) / 2.0)


def _time(fn, repeats: int) -> float:
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _cases(gen: np.random.Generator):
    for d in (8, 16, 32, 64):
        h = _hermitian(gen, d)
        yield (
            f"jacobi_eigh d={d}",
            lambda impl, h=h: impl.jacobi_eigh(h, tol.JACOBI_SWEEP_CAP, tol.JACOBI_OFF_TOL),
            lambda out: np.sort(np.asarray(out[0])),
        )
    d = 64
    s = np.abs(_hermitian(gen, d).real)
    b = _hermitian(gen, d)
    yield (
        f"pair_weighted_abs2_sum d={d}",
        lambda impl: impl.pair_weighted_abs2_sum(s, b),
        np.asarray,
    )
    n, d = 256, 16
    sb = np.abs(_hermitian(gen, d).real)
    stack = np.stack([_hermitian(gen, d) for _ in range(n)])
    yield (
        f"pair_weighted_abs2_sum_batch {n}x{d}",
        lambda impl: impl.pair_weighted_abs2_sum_batch(sb, stack),
        np.asarray,
    )
    p = gen.random((n, d, d))
    yield (
        f"projector_coherence_batch {n}x{d}",
        lambda impl: impl.projector_coherence_batch(sb, p),
        np.asarray,
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7, help="timing repeats (best kept)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _core is None:
        print("compiled extension not built; timing the fallback only\n")

    gen = np.random.default_rng(args.seed)
    header = f"{'kernel':<36}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call, digest in _cases(gen):
        py_out = call(fallback)
        py_t = _time(lambda: call(fallback), args.repeats)
        if _core is None:
            print(f"{name:<36}{py_t * 1e3:>10.3f}ms{'—':>12}{'—':>10}")
            continue
        c_out = call(_core)
        np.testing.assert_allclose(digest(c_out), digest(py_out), atol=1e-10)
        c_t = _time(lambda: call(_core), args.repeats)
        print(f"{name:<36}{py_t * 1e3:>10.3f}ms{c_t * 1e3:>10.3f}ms{py_t / c_t:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
