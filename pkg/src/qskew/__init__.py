"""Metric-adjusted skew information and its derived quantities.

Coherence relative to a measurement basis, averaged coherence over all
bases (four provably equal routes), bipartite average correlation,
wave/particle complementarity, and a quantum f-entropy — with a
cross-oracle verification suite (`qskew.verify`) and a CLI (`qskew`)
on top.  Hot kernels run on a compiled extension when available and a
pure-Python twin otherwise; results are identical either way.
"""
from __future__ import annotations

from ._kernels import BACKEND, backend_name
from .coherence import (
    AverageReport,
    McEstimate,
    average_coherence_closed,
    average_coherence_haar_mc,
    average_coherence_mub,
    average_coherence_operator_basis,
    build_average_report,
    coherence_wrt_basis,
)
from .correlation import (
    BipartiteState,
    CorrelationReport,
    average_correlation_closed,
    average_correlation_fisher_special,
    average_correlation_haar_mc,
    average_correlation_mub,
    average_correlation_operator_basis,
    average_correlation_twirl,
    average_correlation_wy_special,
    build_correlation_report,
    correlation_wrt_basis,
    swap_parties,
    twirl_second_moment,
)
from .duality import (
    DualityReport,
    bipartite_complementarity_check,
    complementarity_report,
    f_entropy,
    particle_feature,
    wave_feature,
)
from .errors import (
    DimensionMismatch,
    InvalidSampleCount,
    InvalidSpec,
    InvalidSpectrum,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotPure,
    NumericalError,
    QskewError,
    UnknownMetric,
    UnsupportedDimension,
)
from .linalg import (
    SpectralDecomposition,
    eigh,
    hermitian_operator_basis,
    partial_trace,
    sqrt_psd,
    tensor,
)
from .monotone import (
    MonotoneFunction,
    c_f,
    get as get_metric,
    names as metric_names,
    register as register_metric,
    spectrum_tilde_sum,
    tilde_c,
)
from .mub import (
    MeasurementBasis,
    MubCertification,
    MubFamily,
    build_mub_family,
    certify_mub,
    computational_basis,
    measurement_basis,
)
from .skew import SkewContext, skew_information, skew_information_ratio_form
from .states import StateSpec, haar_unitary, haar_unitary_batch, materialize
from .verify import CheckResult, run as run_checks

__version__ = "0.1.0"

__all__ = [
    "AverageReport",
    "BACKEND",
    "BipartiteState",
    "CheckResult",
    "CorrelationReport",
    "DimensionMismatch",
    "DualityReport",
    "InvalidSampleCount",
    "InvalidSpec",
    "InvalidSpectrum",
    "McEstimate",
    "MeasurementBasis",
    "MonotoneFunction",
    "MubCertification",
    "MubFamily",
    "NoConvergence",
    "NotHermitian",
    "NotPSD",
    "NotPure",
    "NumericalError",
    "QskewError",
    "SkewContext",
    "SpectralDecomposition",
    "StateSpec",
    "UnknownMetric",
    "UnsupportedDimension",
    "average_coherence_closed",
    "average_coherence_haar_mc",
    "average_coherence_mub",
    "average_coherence_operator_basis",
    "average_correlation_closed",
    "average_correlation_fisher_special",
    "average_correlation_haar_mc",
    "average_correlation_mub",
    "average_correlation_operator_basis",
    "average_correlation_twirl",
    "average_correlation_wy_special",
    "backend_name",
    "bipartite_complementarity_check",
    "build_average_report",
    "build_correlation_report",
    "build_mub_family",
    "c_f",
    "certify_mub",
    "coherence_wrt_basis",
    "complementarity_report",
    "computational_basis",
    "correlation_wrt_basis",
    "eigh",
    "f_entropy",
    "get_metric",
    "haar_unitary",
    "haar_unitary_batch",
    "hermitian_operator_basis",
    "materialize",
    "measurement_basis",
    "metric_names",
    "particle_feature",
    "partial_trace",
    "register_metric",
    "run_checks",
    "skew_information",
    "skew_information_ratio_form",
    "spectrum_tilde_sum",
    "sqrt_psd",
    "swap_parties",
    "tensor",
    "tilde_c",
    "twirl_second_moment",
    "wave_feature",
]
