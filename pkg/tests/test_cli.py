"""Command-line surface: parsing, formats, exit codes, round trips."""

import json

import numpy as np
import pytest

from aeskit import cli, oracle, su2, su11


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_complex_forms():
    assert cli.parse_complex("1.5+0.3i") == 1.5 + 0.3j
    assert cli.parse_complex("-2i") == -2j
    assert cli.parse_complex("3") == 3.0
    assert cli.parse_complex("1e-3-2.5e2i") == 1e-3 - 2.5e2j
    with pytest.raises(cli.CliInputError):
        cli.parse_complex("one")


def test_solve_trivial_json(capsys):
    code, out, _ = run_cli(
        capsys, "solve", "--group", "su2", "--j", "1", "--beta", "0,0,1", "--m0", "0"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["eigenvalue"] == [0.0, 0.0]
    assert [a for a in doc["amplitudes"]] == [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]
    assert doc["spectrum_class"] == "discrete-su2"


def test_solve_json_round_trip_reverifies(capsys):
    code, out, _ = run_cli(
        capsys,
        "solve", "--group", "su2", "--j", "1.5", "--beta", "1,0,0", "--m0", "0.5",
    )
    assert code == 0
    doc = json.loads(out)
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    lam = complex(*doc["eigenvalue"])
    matrix = su2.weight_matrix(1.5, su2.Su2Weight(1, 0, 0))
    assert np.linalg.norm(matrix @ amps - lam * amps) < 1e-8
    assert doc["residual"] < 1e-10


def test_solve_su11_round_trip_reverifies(capsys):
    code, out, _ = run_cli(
        capsys,
        "solve", "--group", "su11", "--k", "1", "--beta", "1,0,2", "--l", "1", "--N", "64",
    )
    assert code == 0
    doc = json.loads(out)
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    lam = complex(*doc["eigenvalue"])
    matrix = oracle.su11_weight_matrix(1.0, su11.Su11Weight(1, 0, 2), doc["truncation"])
    assert np.linalg.norm((matrix @ amps - lam * amps)[:-2]) < 1e-8
    assert doc["tail_bound"] < 1e-10


def test_solve_deterministic_output(capsys):
    argv = ["solve", "--group", "su2", "--j", "2", "--beta", "0.3+0.1i,0.2,0.7-0.4i", "--m0", "1"]
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_solve_preset_sphere_matches_coherent_state(capsys):
    theta, phi = 0.9, 1.3
    code, out, _ = run_cli(
        capsys,
        "solve", "--group", "su2", "--j", "1.5",
        "--preset", "su2-sphere", str(theta), str(phi), "--m0", "-1.5",
    )
    assert code == 0
    doc = json.loads(out)
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    zeta0 = -np.tan(theta / 2) * np.exp(-1j * phi)
    cs = su2.coherent_state(1.5, zeta0).amplitudes
    assert abs(abs(np.vdot(amps, cs)) - 1.0) < 1e-12


def test_solve_forbidden_region_exits_2(capsys):
    code, _, err = run_cli(
        capsys, "solve", "--group", "su11", "--k", "1", "--beta", "1,0,0", "--lambda", "0.3"
    )
    assert code == 2
    assert "forbidden" in err


def test_solve_label_mismatch_exits_2(capsys):
    code, _, err = run_cli(
        capsys, "solve", "--group", "su11", "--k", "1", "--beta", "1,0,2", "--lambda", "1.0"
    )
    assert code == 2
    assert "nonnegative integer l" in err


def test_solve_invalid_m0_exits_2(capsys):
    code, _, err = run_cli(
        capsys, "solve", "--group", "su2", "--j", "1", "--beta", "1,0,0", "--m0", "0.5"
    )
    assert code == 2


def test_residual_tolerance_env_override(capsys, monkeypatch):
    monkeypatch.setenv("AESKIT_TOL", "1e-30")
    code, out, err = run_cli(
        capsys, "solve", "--group", "su2", "--j", "1", "--beta", "0.3,0.2,0.4", "--m0", "1"
    )
    assert code == 1  # nothing beats 1e-30
    assert "exceeds tolerance" in err


def test_classify_su11_json(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--group", "su11", "--beta", "1,0,2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["class"] == "discrete-positive"
    assert doc["admissible"] is True
    assert abs(complex(*doc["b"]) - np.sqrt(3)) < 1e-12
    assert {"tau_plus", "tau_minus", "s_plus", "s_minus", "Y", "t"} <= set(doc)


def test_classify_boundary_diagnostic(capsys):
    code, out, _ = run_cli(capsys, "classify", "--group", "su11", "--beta", "1,0,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["class"] == "forbidden"
    assert "delta-normalizable" in doc["diagnostic"]


def test_moments_su2_sweep_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "moments", "--group", "su2", "--j", "1", "--beta", "1,0,0.5i", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "label,mean,variance,closed_form_vs_direct_gap"
    assert len(lines) == 4  # three labels for j = 1
    for line in lines[1:]:
        gap = float(line.split(",")[-1])
        assert gap < 1e-9


def test_moments_su11_discrete_sweep(capsys):
    code, out, _ = run_cli(
        capsys,
        "moments", "--group", "su11", "--k", "0.5", "--beta", "1,0,2",
        "--lmax", "3", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert [row["label"] for row in doc["rows"]] == ["l=0", "l=1", "l=2", "l=3"]
    for row in doc["rows"]:
        assert row["closed_form_vs_direct_gap"] < 1e-9


def test_moments_su11_continuous_requires_lambda(capsys):
    code, _, err = run_cli(
        capsys, "moments", "--group", "su11", "--k", "1",
        "--preset", "is-generalized", "2+0.5i",
    )
    assert code == 2
    assert "provide --lambda" in err


def test_moments_su11_continuous_lambda_list(capsys):
    code, out, _ = run_cli(
        capsys,
        "moments", "--group", "su11", "--k", "1", "--preset", "is-generalized", "2+0.5i",
        "--lambda", "0.3;0.9", "--format", "csv",
    )
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_verify_specfun_scope_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "specfun")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_verify_negative_control_fails(capsys):
    code, out, err = run_cli(capsys, "verify", "--scope", "su2", "--inject-corruption")
    assert code == 1
    assert "[FAIL] su2.normalization-closed-vs-series" in out
    assert "violated invariant: su2.normalization-closed-vs-series" in err


def test_solve_pretty_format(capsys):
    code, out, _ = run_cli(
        capsys,
        "solve", "--group", "su2", "--j", "0.5", "--beta", "1,0,0", "--m0", "0.5",
        "--format", "pretty",
    )
    assert code == 0
    assert "eigenvalue" in out and "amplitudes:" in out
