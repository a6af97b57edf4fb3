"""Shared test helpers and the acceptance-criteria reporter.

The acceptance tests append one line per criterion to ACCEPTANCE_LINES;
the terminal-summary hook prints them after the run so the pass/fail
status of each criterion is visible in plain pytest output.
"""
from __future__ import annotations

import numpy as np

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_hermitian(gen: np.random.Generator, d: int) -> np.ndarray:
    z = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    return (z + z.conj().T) / 2.0


def random_density(gen: np.random.Generator, d: int, rank: int | None = None) -> np.ndarray:
    r = d if rank is None else rank
    g = gen.standard_normal((d, r)) + 1j * gen.standard_normal((d, r))
    m = g @ g.conj().T
    return m / np.trace(m).real
