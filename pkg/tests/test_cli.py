"""End-to-end CLI behavior through in-process main(): output and exit codes."""
from __future__ import annotations

import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qskew.cli import main
from qskew.linalg import matrix_from_json_dict, matrix_to_json_dict
from qskew.states import state_to_json_dict

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv, expect=0):
    code, out, _ = run_cli(capsys, *argv)
    assert code == expect
    return json.loads(out)


def test_coherence_max_coherent(capsys):
    payload = run_json(
        capsys, "coherence", "--family", "max_coherent", "--dim", "2",
        "--samples", "128",
    )
    assert payload["dim"] == 2 and payload["metric"] == "wy"
    assert_allclose(payload["closed_form"], 1.0 / 3.0, atol=1e-12)
    assert_allclose(payload["mub_average"], payload["closed_form"], atol=1e-9)
    assert_allclose(payload["operator_basis_average"], payload["closed_form"], atol=1e-9)
    assert payload["haar_mc"]["samples"] == 128
    assert payload["haar_mc"]["std_error"] >= 0.0


def test_coherence_without_mub_family_is_partial(capsys):
    payload = run_json(
        capsys, "coherence", "--family", "mixed_ginibre", "--dim", "6",
        "--samples", "128", expect=3,
    )
    assert payload["mub_average"] is None
    assert payload["closed_form"] > 0.0
    assert payload["operator_basis_average"] is not None


def test_coherence_with_state_and_basis_files(capsys, tmp_path):
    state = tmp_path / "state.json"
    state.write_text(json.dumps(state_to_json_dict(np.diag([0.75, 0.25]), (2,))))
    basis = tmp_path / "basis.json"
    basis.write_text(json.dumps(matrix_to_json_dict(HADAMARD)))
    payload = run_json(
        capsys, "coherence", "--state", str(state), "--basis", str(basis),
        "--samples", "128",
    )
    s3 = math.sqrt(3.0)
    assert_allclose(payload["closed_form"], (1 - s3 / 2) / 3, atol=1e-12)
    assert_allclose(payload["basis_coherence"], (1 - s3 / 2) / 2, atol=1e-12)


def test_correlation_bell(capsys):
    payload = run_json(
        capsys, "correlation", "--family", "bell", "--samples", "128",
    )
    assert payload["d_a"] == 2 and payload["d_b"] == 2
    for key in ("closed", "mub", "ob", "twirl_exact", "special"):
        assert_allclose(payload[key], 0.5, atol=1e-9)
    assert abs(payload["haar_mc"]["mean"] - 0.5) <= 5 * payload["haar_mc"]["std_error"] + 1e-9
    assert payload["twirl_mc"]["samples"] == 128


def test_correlation_no_special_for_other_metrics(capsys):
    payload = run_json(
        capsys, "correlation", "--family", "werner", "--param", "0.3",
        "--metric", "sld", "--samples", "128",
    )
    assert payload["metric"] == "sld"
    assert payload["special"] is not None  # sld has the harmonic-mean shortcut
    assert_allclose(payload["special"], payload["closed"], atol=1e-9)


def test_duality_report(capsys):
    payload = run_json(capsys, "duality", "--family", "max_coherent", "--dim", "3")
    assert_allclose(payload["total"], 2.0, atol=1e-9)
    assert payload["residual_prop4"] <= 1e-9
    assert_allclose(
        payload["wave"] + payload["particle"] + payload["f_entropy"],
        payload["total"],
        atol=1e-15,
    )


def test_sweep_csv_shape(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--family", "werner")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "param,metric,Q_closed,W,P,S_f,residual_prop5"
    assert len(lines) == 12  # header + 11 grid points
    first = lines[1].split(",")
    last = lines[-1].split(",")
    assert float(first[0]) == 0.0 and float(last[0]) == 1.0
    assert_allclose(float(first[2]), 0.0, atol=1e-12)  # maximally mixed
    assert_allclose(float(last[2]), 0.5, atol=1e-10)  # singlet
    # the pure-joint-state residual column is populated only at the endpoint
    assert first[6] == "" and last[6] != ""
    assert float(last[6]) <= 1e-9


def test_sweep_custom_grid_and_metric(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--family", "isotropic", "--metric", "sld",
        "--grid", "0.2:0.8:4",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 5
    assert all(line.split(",")[1] == "sld" for line in lines[1:])
    assert_allclose(
        [float(line.split(",")[0]) for line in lines[1:]], [0.2, 0.4, 0.6, 0.8]
    )


def test_output_is_bitwise_reproducible(capsys):
    args = ("correlation", "--family", "isotropic", "--param", "0.7", "--samples", "128")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_verify_subcommand_filters(capsys):
    payload = run_json(
        capsys, "verify", "--only", "mub.certification", "--samples", "64",
    )
    assert payload["pass"] is True
    assert [c["name"] for c in payload["checks"]] == ["mub.certification"]
    assert all(c["pass"] for c in payload["checks"])


def test_verify_tolerance_override_fails(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--only", "linalg.eigh_reconstruct",
        "--samples", "64", "--tol", "1e-18",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["pass"] is False
    assert payload["checks"][0]["tolerance"] == 1e-18


def test_mub_dump(capsys):
    payload = run_json(capsys, "mub-dump", "--dim", "2")
    assert len(payload) == 3
    for entry in payload:
        u = matrix_from_json_dict(entry)
        assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_mub_dump_unsupported_dimension(capsys):
    code, out, err = run_cli(capsys, "mub-dump", "--dim", "6")
    assert code == 3
    assert err != ""


@pytest.mark.parametrize(
    "argv",
    [
        ("coherence", "--family", "nope", "--dim", "2"),
        ("coherence", "--family", "bell"),  # bipartite family, single-system command
        ("coherence", "--family", "max_coherent"),  # --dim missing
        ("coherence", "--family", "max_coherent", "--dim", "2", "--out", "csv"),
        ("coherence", "--family", "max_coherent", "--dim", "2", "--samples", "1"),
        ("coherence",),  # neither --state nor --family
        ("correlation", "--family", "max_coherent", "--dim", "2"),
        ("sweep", "--family", "bell"),
        ("sweep", "--family", "werner", "--grid", "0:1:0"),
        ("verify", "--only", "no.such.check"),
        (),  # missing subcommand
    ],
)
def test_config_errors_exit_two(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2


def test_state_and_family_conflict(capsys, tmp_path):
    state = tmp_path / "state.json"
    state.write_text(json.dumps(state_to_json_dict(np.eye(2) / 2, (2,))))
    code, _, _ = run_cli(
        capsys, "coherence", "--state", str(state), "--family", "max_coherent",
        "--dim", "2",
    )
    assert code == 2


def test_help_exits_zero(capsys):
    code, _, _ = run_cli(capsys, "--help")
    assert code == 0
