"""Command-line surface.

Subcommands expose every computation plus the verification suite; JSON is
the canonical output (CSV only for sweeps) and every numeric result is
bitwise reproducible for a fixed command line on one build.

Exit codes: 0 ok, 1 verification failure, 2 config error, 3 partial
result (the MUB route is unavailable at this dimension; the other routes
are still emitted, with a null MUB field).
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import verify
from . import tolerances as tol
from .coherence import McEstimate, build_average_report, coherence_wrt_basis
from .correlation import (
    BipartiteState,
    average_correlation_closed,
    average_correlation_fisher_special,
    average_correlation_twirl,
    average_correlation_wy_special,
    build_correlation_report,
)
from .duality import (
    bipartite_complementarity_check,
    complementarity_report,
    f_entropy,
    particle_feature,
    wave_feature,
)
from .errors import FileError, InvalidSpec, QskewError, UnsupportedDimension
from .linalg import clamped_spectrum, matrix_from_json_dict, matrix_to_json_dict
from .monotone import MonotoneFunction, get as get_metric, names as metric_names
from .mub import build_mub_family, computational_basis, measurement_basis
from .skew import SkewContext
from .states import KINDS, StateSpec, materialize

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG = 2
EXIT_PARTIAL = 3

_SINGLE_FAMILIES = ("pure_haar", "mixed_ginibre", "max_coherent")
_BIPARTITE_DEFAULT_DIMS = {"bell": (2, 2), "werner": (2, 2), "isotropic": (2, 2)}


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _fmt(x: float) -> str:
    return repr(float(x))


def _mc_dict(est: McEstimate | None):
    if est is None:
        return None
    return {"mean": est.mean, "std_error": est.std_error, "samples": est.samples}


def _parse_dims(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidSpec(f"--dims wants 'a,b', got {text!r}")
    try:
        d_a, d_b = (int(p) for p in parts)
    except ValueError as exc:
        raise InvalidSpec(f"--dims wants integers, got {text!r}") from exc
    return d_a, d_b


def _build_spec(args) -> StateSpec:
    if args.state and args.family:
        raise InvalidSpec("give either --state or --family, not both")
    if args.state:
        return StateSpec(kind="file", path=args.state)
    if not args.family:
        raise InvalidSpec("need --state <file.json> or --family <name>")
    kind = args.family
    if kind not in KINDS or kind == "file":
        raise InvalidSpec(f"unknown family {kind!r}; known: {KINDS[:-1]}")
    if kind in _SINGLE_FAMILIES:
        dims = (args.dim,) if args.dim else None
        if dims is None and args.dims:
            dims = _parse_dims(args.dims)
        if dims is None:
            raise InvalidSpec(f"family {kind} needs --dim (or --dims for bipartite)")
        return StateSpec(kind=kind, dims=dims, seed=args.seed, param=args.param)
    dims = _parse_dims(args.dims) if args.dims else _BIPARTITE_DEFAULT_DIMS.get(kind)
    if kind == "product":
        if dims is None:
            raise InvalidSpec("family product needs --dims a,b")
        factors = (
            StateSpec(kind="mixed_ginibre", dims=(dims[0],), seed=args.seed),
            StateSpec(kind="mixed_ginibre", dims=(dims[1],), seed=args.seed + 1),
        )
        return StateSpec(kind="product", dims=dims, factors=factors)
    return StateSpec(kind=kind, dims=dims, seed=args.seed, param=args.param)


def _single_state(args) -> np.ndarray:
    made = materialize(_build_spec(args))
    if isinstance(made, BipartiteState):
        raise InvalidSpec(
            "this subcommand works on a single system; got a bipartite state "
            "(use the correlation subcommand)"
        )
    return made


def _bipartite_state(args) -> BipartiteState:
    made = materialize(_build_spec(args))
    if not isinstance(made, BipartiteState):
        raise InvalidSpec(
            "this subcommand works on a bipartite state; give dims [d_A, d_B]"
        )
    return made


def _metric(args) -> MonotoneFunction:
    return get_metric(args.metric)


def _basis_from_file(path: str, dim: int):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileError(f"cannot read basis file {path}: {exc}") from exc
    m = matrix_from_json_dict(obj)
    if m.shape[0] != dim:
        raise InvalidSpec(f"basis dim {m.shape[0]} != state dim {dim}")
    return measurement_basis(m)


def run_coherence(args) -> int:
    metric = _metric(args)
    ctx = SkewContext.create(_single_state(args), metric)
    try:
        family = build_mub_family(ctx.dim)
    except UnsupportedDimension:
        family = None
    report = build_average_report(ctx, family, samples=args.samples, seed=args.seed)
    out = {
        "dim": ctx.dim,
        "metric": metric.name,
        "closed_form": report.closed_form,
        "mub_average": report.mub_average,
        "operator_basis_average": report.operator_basis_average,
        "haar_mc": _mc_dict(report.haar_mc),
    }
    if args.basis:
        out["basis_coherence"] = coherence_wrt_basis(
            ctx, _basis_from_file(args.basis, ctx.dim)
        )
    _emit(out)
    return EXIT_OK if family is not None else EXIT_PARTIAL


def run_correlation(args) -> int:
    metric = _metric(args)
    bp = _bipartite_state(args)
    try:
        family = build_mub_family(bp.d_a)
    except UnsupportedDimension:
        family = None
    report = build_correlation_report(bp, metric, family, samples=args.samples, seed=args.seed)
    twirl_mc = average_correlation_twirl(
        bp, metric, mode="mc", samples=args.samples, seed=args.seed
    )
    out = {
        "d_a": bp.d_a,
        "d_b": bp.d_b,
        "metric": metric.name,
        "closed": report.closed_form,
        "mub": report.mub_average,
        "ob": report.operator_basis_average,
        "haar_mc": _mc_dict(report.haar_mc),
        "twirl_exact": report.twirl_exact,
        "twirl_mc": _mc_dict(twirl_mc),
    }
    if metric.name == "wy":
        out["special"] = average_correlation_wy_special(bp)
    elif metric.name == "sld":
        out["special"] = average_correlation_fisher_special(bp)
    _emit(out)
    return EXIT_OK if family is not None else EXIT_PARTIAL


def run_duality(args) -> int:
    metric = _metric(args)
    ctx = SkewContext.create(_single_state(args), metric)
    basis = (
        _basis_from_file(args.basis, ctx.dim)
        if args.basis
        else computational_basis(ctx.dim)
    )
    report = complementarity_report(ctx, basis)
    _emit(
        {
            "dim": report.dim,
            "metric": metric.name,
            "wave": report.wave,
            "particle": report.particle,
            "f_entropy": report.f_entropy,
            "total": report.total,
            "residual_prop4": report.residual_prop4,
        }
    )
    return EXIT_OK


def _parse_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidSpec(f"--grid wants 'start:stop:count', got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InvalidSpec(f"malformed --grid {text!r}: {exc}") from exc
    if count < 1:
        raise InvalidSpec(f"--grid count must be >= 1, got {count}")
    return np.linspace(start, stop, count)


def run_sweep(args) -> int:
    metric = _metric(args)
    if args.family not in ("werner", "isotropic"):
        raise InvalidSpec(
            f"sweep needs a parametric family (werner, isotropic), got {args.family!r}"
        )
    dims = _parse_dims(args.dims) if args.dims else (2, 2)
    grid = _parse_grid(args.grid)
    basis = computational_basis(dims[0])
    print("param,metric,Q_closed,W,P,S_f,residual_prop5")
    for value in grid:
        bp = materialize(StateSpec(kind=args.family, dims=dims, param=float(value)))
        q = average_correlation_closed(bp, metric)
        marginal = bp.marginal_context(metric)
        w = wave_feature(marginal, basis)
        p = particle_feature(marginal, basis)
        s = f_entropy(clamped_spectrum(bp.marginal_decomposition), metric)
        top = float(np.max(bp.decomposition.eigenvalues))
        residual = (
            _fmt(bipartite_complementarity_check(bp, metric, basis))
            if top >= 1.0 - tol.PURITY_PURE_TOL
            else ""
        )
        row = (_fmt(value), metric.name, _fmt(q), _fmt(w), _fmt(p), _fmt(s), residual)
        print(",".join(row))
    return EXIT_OK


def run_verify(args) -> int:
    if args.only and not any(args.only in name for name in verify.CHECK_NAMES):
        raise InvalidSpec(f"--only {args.only!r} matches no check name")
    results = verify.run(
        only=args.only, seed=args.seed, samples=args.samples, tol_override=args.tol
    )
    all_pass = all(r.passed for r in results)
    _emit(
        {
            "checks": [
                {
                    "name": r.name,
                    "max_residual": r.max_residual,
                    "tolerance": r.tolerance,
                    "pass": r.passed,
                }
                for r in results
            ],
            "pass": all_pass,
        }
    )
    return EXIT_OK if all_pass else EXIT_CHECK_FAILURE


def run_mub_dump(args) -> int:
    try:
        family = build_mub_family(args.dim)
    except UnsupportedDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    _emit([matrix_to_json_dict(basis.vectors) for basis in family.bases])
    return EXIT_OK


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", metavar="FILE", help="state JSON: {dims, re, im}")
    p.add_argument("--family", metavar="NAME", help="named family (e.g. bell, werner)")
    p.add_argument("--param", type=float, help="family parameter (Werner p, isotropic F)")
    p.add_argument("--dim", type=int, help="single-system dimension")
    p.add_argument("--dims", metavar="A,B", help="bipartite dimensions")
    p.add_argument("--seed", type=int, default=0, help="stream seed (default 0)")


def _add_metric_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--metric",
        default="wy",
        help=f"monotone-function name, one of {metric_names()} (default wy)",
    )


def _add_mc_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--samples",
        type=int,
        default=tol.DEFAULT_SAMPLES,
        help=f"Monte Carlo sample count (default {tol.DEFAULT_SAMPLES})",
    )


def _add_out_flag(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument(
        "--out",
        choices=("json", "csv"),
        default=default,
        help=f"output format (default {default}; csv is sweep-only)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qskew",
        description="Metric-adjusted skew information: coherence, correlation, "
        "duality, sweeps, and a cross-oracle verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="average-coherence report for one state")
    _add_state_flags(p)
    _add_metric_flag(p)
    _add_mc_flags(p)
    _add_out_flag(p, "json")
    p.add_argument("--basis", metavar="FILE", help="also report coherence w.r.t. this basis")
    p.set_defaults(func=run_coherence)

    p = sub.add_parser("correlation", help="average-correlation report for a bipartite state")
    _add_state_flags(p)
    _add_metric_flag(p)
    _add_mc_flags(p)
    _add_out_flag(p, "json")
    p.set_defaults(func=run_correlation)

    p = sub.add_parser("duality", help="wave/particle/entropy complementarity report")
    _add_state_flags(p)
    _add_metric_flag(p)
    _add_out_flag(p, "json")
    p.add_argument("--basis", metavar="FILE", help="measurement basis (default computational)")
    p.set_defaults(func=run_duality)

    p = sub.add_parser("sweep", help="CSV sweep of a parametric bipartite family")
    p.add_argument("--family", required=True, help="werner or isotropic")
    p.add_argument("--dims", metavar="A,B", help="bipartite dimensions (default 2,2)")
    _add_metric_flag(p)
    p.add_argument(
        "--grid",
        default="0:1:11",
        help="parameter grid start:stop:count (default 0:1:11)",
    )
    _add_out_flag(p, "csv")
    p.set_defaults(func=run_sweep)

    p = sub.add_parser("verify", help="run the cross-oracle verification suite")
    p.add_argument("--only", metavar="SUBSTRING", help="run only checks whose name contains this")
    p.add_argument("--seed", type=int, default=0, help="suite seed (default 0)")
    _add_mc_flags(p)
    p.add_argument(
        "--tol",
        type=float,
        default=None,
        help="override every check tolerance with this value",
    )
    _add_out_flag(p, "json")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("mub-dump", help="dump a mutually unbiased basis family as JSON")
    p.add_argument("--dim", type=int, required=True, help="dimension (2, 3, 4, 5, or 7)")
    _add_out_flag(p, "json")
    p.set_defaults(func=run_mub_dump)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and usage errors
        code = exc.code
        if code in (0, None):
            return EXIT_OK
        return EXIT_CONFIG
    if getattr(args, "out", "json") == "csv" and args.command != "sweep":
        print("error: csv output is sweep-only; other commands emit json", file=sys.stderr)
        return EXIT_CONFIG
    if args.command == "sweep" and args.out != "csv":
        print("error: sweep emits csv; --out json is not available here", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except QskewError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
