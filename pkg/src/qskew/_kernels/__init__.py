"""Kernel backend selection.

The numerically heavy inner loops — the cyclic Jacobi eigensolver and the
pair-weighted reductions behind every skew-information sum — exist twice:
a Cython extension (``_core``) and a pure-NumPy fallback with identical
semantics.  The extension is preferred when importable; set
``QSKEW_KERNEL=python`` or ``QSKEW_KERNEL=compiled`` to force a choice.
"""
from __future__ import annotations

import os

from . import fallback

_choice = os.environ.get("QSKEW_KERNEL", "auto").lower()

if _choice in ("auto", "compiled"):
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "QSKEW_KERNEL=compiled but the qskew._kernels._core extension "
                "is not built; reinstall with a C toolchain or unset QSKEW_KERNEL"
            ) from None
        _impl = fallback
        BACKEND = "python"
elif _choice == "python":
    _impl = fallback
    BACKEND = "python"
else:
    raise ValueError(f"unrecognized QSKEW_KERNEL value: {_choice!r}")

jacobi_eigh = _impl.jacobi_eigh
pair_weighted_abs2_sum = _impl.pair_weighted_abs2_sum
pair_weighted_abs2_sum_batch = _impl.pair_weighted_abs2_sum_batch
projector_coherence_batch = _impl.projector_coherence_batch


def backend_name() -> str:
    """Which kernel implementation is active ("compiled" or "python")."""
    return BACKEND
