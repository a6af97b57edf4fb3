"""Deterministic counter-based random streams.

Every stochastic routine draws from a Philox-4x64 generator keyed by
(seed, index), so sample i of any Monte-Carlo loop owns its own stream and
may be evaluated in any order with bit-identical results.  A fixed counter
tag per sampling purpose keeps independent loops out of each other's
streams even when they share a seed.
"""
from __future__ import annotations

import numpy as np

DOMAIN_GENERIC = 0
DOMAIN_STATES = 1
DOMAIN_COHERENCE_MC = 2
DOMAIN_CORRELATION_MC = 3
DOMAIN_TWIRL_MC = 4
DOMAIN_HAAR = 5

_MASK64 = (1 << 64) - 1


def stream(seed: int, index: int = 0, domain: int = DOMAIN_GENERIC) -> np.random.Generator:
    """The generator owning stream (seed, index) under the given domain tag."""
    bitgen = np.random.Philox(
        counter=[0, 0, 0, domain], key=[seed & _MASK64, index & _MASK64]
    )
    return np.random.Generator(bitgen)


def complex_gaussians(gen: np.random.Generator, n: int) -> np.ndarray:
    """n standard complex Gaussians with E|z|^2 = 1, via the polar transform.

    Draw order is pinned (radii uniforms first, then phase uniforms) so the
    stream contract stays reproducible.
    """
    u = gen.random(2 * n)
    radius = np.sqrt(-np.log1p(-u[:n]))  # 1-u avoids log(0)
    return radius * np.exp(2j * np.pi * u[n:])
