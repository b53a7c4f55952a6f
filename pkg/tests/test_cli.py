"""Command-line front end: config resolution, reports, file formats, exit codes."""

import json
import math

import numpy as np
import pytest

from hyperspectra.cli import (
    ConfigError,
    dumps,
    main,
    resolve_config,
    run_analyze,
    run_montecarlo,
    run_verify,
)


def cfg_of(**over):
    return resolve_config(None, over)


# ---------------------------------------------------------------------------
# serialization


def test_dumps_is_deterministic_and_typed():
    report = {
        "flag": True,
        "count": 3,
        "x": 0.1,
        "none": None,
        "inf": float("inf"),
        "ninf": float("-inf"),
        "nan": float("nan"),
        "vec": [1.0, 2.5],
        "nested": {"a": [1, 2]},
    }
    text = dumps(report)
    assert text == dumps(report)
    assert '"flag": true' in text
    assert '"count": 3' in text
    assert '"x": 0.10000000000000001' in text
    assert '"inf": "inf"' in text
    assert '"ninf": "-inf"' in text
    assert '"nan": "nan"' in text
    assert text.endswith("\n")
    # bools must not be serialized as integers
    assert '"flag": 1' not in text


def test_dumps_17_digit_roundtrip():
    rng = np.random.default_rng(2)
    vals = list(rng.standard_normal(64)) + [1e-300, 1e300, 2.0**-1074]
    text = dumps({"vals": vals})
    back = json.loads(text)
    assert back["vals"] == vals


# ---------------------------------------------------------------------------
# configuration


def test_resolve_config_layering():
    cfg = resolve_config({"n": 10, "seed": 4}, {"seed": 9})
    assert cfg["n"] == 10
    assert cfg["seed"] == 9
    assert cfg["bins"] == 100
    assert cfg["engine"] == "auto"


def test_resolve_config_rejects_unknown_and_bad():
    with pytest.raises(ConfigError):
        resolve_config({"unknown_key": 1}, None)
    with pytest.raises(ConfigError):
        resolve_config(None, {"engine": "quantum"})
    with pytest.raises(ConfigError):
        resolve_config(None, {"z": [1.0, -2.0]})
    with pytest.raises(ConfigError):
        resolve_config(None, {"eps": 0.0})
    with pytest.raises(ConfigError):
        resolve_config(None, {"budget": {"max_edges": 0}})
    with pytest.raises(ConfigError):
        resolve_config(None, {"emit": ["png"]})


# ---------------------------------------------------------------------------
# analyze


def test_analyze_report_values():
    report = run_analyze(cfg_of(n=5, r=[2, 3], p=[0.5, 0.5]))
    assert report["schema_version"] == 1
    assert report["derived"]["sigma_sq"] == pytest.approx(1.0, rel=1e-13)
    assert report["derived"]["w_fin"] == pytest.approx([0.25, 0.75], rel=1e-12)
    assert report["regime"] is not None
    assert report["covariance_profile"]["theta_sq"] == pytest.approx(
        1.0 - 2 * report["covariance_profile"]["gamma_n"]
        + report["covariance_profile"]["rho_n"],
        abs=1e-12,
    )
    assert report["chatterjee"]["total"] >= 0.0

    k1 = run_analyze(cfg_of(n=50, r=[3], p=[0.1]))
    assert k1["regime"] is None


def test_analyze_cli_exit_codes(capsys):
    assert main(["analyze", "--n", "5", "--r", "2,3", "--p", "0.5,0.5"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["params"]["n"] == 5

    assert main(["analyze", "--n", "5", "--r", "3", "--p", "0.0"]) == 3
    assert main(["analyze", "--n", "5", "--r", "9", "--p", "0.1"]) == 2
    assert main(["analyze", "--n", "5", "--r", "3"]) == 2  # missing p
    capsys.readouterr()


def test_analyze_csv_format(capsys):
    assert main(
        ["analyze", "--n", "5", "--r", "2", "--p", "0.5", "--format", "csv"]
    ) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("derived.sigma_sq,") for line in lines)


def test_config_file_and_overrides(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"n": 5, "r": [2], "p": [0.5], "seed": 3}))
    assert main(["analyze", "--config", str(path), "--seed", "7"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["params"]["n"] == 5

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", "--config", str(bad)]) == 2
    assert main(["analyze", "--config", str(tmp_path / "missing.json")]) == 5
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"n": 5, "r": [2], "p": [0.5], "zz": 1}))
    assert main(["analyze", "--config", str(unknown)]) == 2
    capsys.readouterr()


# ---------------------------------------------------------------------------
# sample and spectrum


def test_sample_complete_file(tmp_path, capsys):
    assert main(
        ["sample", "--n", "5", "--r", "2", "--p", "1.0", "--out", str(tmp_path)]
    ) == 0
    capsys.readouterr()
    text = (tmp_path / "hypergraph.txt").read_text()
    lines = text.splitlines()
    assert lines[0] == "5 1"
    assert lines[1] == "2 10"
    assert len(lines) == 12


def test_sample_budget_exit(capsys):
    code = main(
        [
            "sample",
            "--n", "100000", "--r", "5", "--p", "0.5",
            "--max-edges", "1000000",
        ]
    )
    assert code == 4
    capsys.readouterr()


def test_spectrum_empty_hypergraph(tmp_path, capsys):
    # zero adjacency: H = -mu/sqrt(n sigma^2) (J - I), spectrum
    # {-(n-1) mu, mu, ...} / sqrt(n sigma^2)
    hpath = tmp_path / "empty.txt"
    hpath.write_text("4 1\n2 0\n")
    code = main(
        [
            "spectrum", str(hpath),
            "--n", "4", "--r", "2", "--p", "0.5",
            "--out", str(tmp_path),
        ]
    )
    assert code == 0
    capsys.readouterr()
    lines = (tmp_path / "eigenvalues.csv").read_text().splitlines()
    assert lines[0] == "lambda"
    vals = [float(v) for v in lines[1:]]
    assert vals == pytest.approx([-1.5, 0.5, 0.5, 0.5], abs=1e-12)


def test_spectrum_mismatched_model(tmp_path, capsys):
    hpath = tmp_path / "h.txt"
    hpath.write_text("4 1\n2 0\n")
    assert main(["spectrum", str(hpath), "--n", "5", "--r", "2", "--p", "0.5"]) == 2
    assert main(["spectrum", str(hpath), "--n", "4", "--r", "3", "--p", "0.5"]) == 2
    assert main(["spectrum", str(tmp_path / "no.txt"), "--n", "4", "--r", "2", "--p", "0.5"]) == 5
    capsys.readouterr()


def test_spectrum_csv_precision(tmp_path, capsys):
    assert main(
        ["sample", "--n", "30", "--r", "3", "--p", "0.1", "--seed", "8", "--out", str(tmp_path)]
    ) == 0
    assert main(
        [
            "spectrum", str(tmp_path / "hypergraph.txt"),
            "--n", "30", "--r", "3", "--p", "0.1", "--out", str(tmp_path),
        ]
    ) == 0
    capsys.readouterr()
    lines = (tmp_path / "eigenvalues.csv").read_text().splitlines()
    assert lines[0] == "lambda"
    assert len(lines) == 31
    # 17 significant digits survive the float round trip
    for v in lines[1:]:
        assert float(v) == float(format(float(v), ".17g"))


# ---------------------------------------------------------------------------
# montecarlo / gaussian


def test_montecarlo_deterministic_across_workers():
    base = dict(n=300, r=[3], p=[0.01], trials=4, seed=42, bins=40)
    r1 = run_montecarlo(cfg_of(**base, workers=1))
    r4 = run_montecarlo(cfg_of(**base, workers=4))
    assert dumps(r1) == dumps(r4)


def test_montecarlo_deterministic_across_reruns():
    cfg = cfg_of(n=4, r=[2], p=[0.5], trials=1, seed=11)
    assert dumps(run_montecarlo(cfg)) == dumps(run_montecarlo(cfg))


def test_montecarlo_superposition_s2():
    report = run_montecarlo(cfg_of(n=2000, r=[2, 2], p=[0.3, 0.5], trials=1, seed=1))
    want = (1.0 - 2.0 / 2000.0) ** 2
    assert report["s2_pred"] == pytest.approx(want, rel=1e-12)
    assert abs(report["s2_pred"] - 1.0) < 0.01
    assert report["engine"] == "bernoulli"
    assert report["m2"] == pytest.approx((2000 - 1) / 2000, abs=0.02)


def test_montecarlo_auto_switches_to_surrogate():
    cfg = cfg_of(n=2000, r=[600], p=[0.3], trials=1, seed=5)
    report = run_montecarlo(cfg)
    assert report["engine"] == "gaussian-surrogate"
    assert any("surrogate" in note for note in report["notes"])
    assert report["s2_pred"] == pytest.approx(0.49, abs=0.01)


def test_montecarlo_forced_bernoulli_raises():
    from hyperspectra import BudgetExceededError

    with pytest.raises(BudgetExceededError):
        run_montecarlo(cfg_of(n=2000, r=[600], p=[0.3], trials=1, engine="bernoulli"))


def test_gaussian_subcommand_forces_surrogate(capsys):
    assert main(
        [
            "gaussian",
            "--n", "60", "--r", "3", "--p", "0.2",
            "--trials", "2", "--seed", "3", "--quiet",
        ]
    ) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "gaussian"
    assert report["engine"] == "gaussian-surrogate"


def test_montecarlo_emit_files(tmp_path, capsys):
    assert main(
        [
            "montecarlo",
            "--n", "40", "--r", "3", "--p", "0.05",
            "--trials", "2", "--seed", "9", "--bins", "16",
            "--out", str(tmp_path), "--emit", "json,csv,svg", "--quiet",
        ]
    ) == 0
    stdout_report = json.loads(capsys.readouterr().out)
    on_disk = json.loads((tmp_path / "montecarlo.json").read_text())
    assert on_disk == stdout_report
    for t in range(2):
        lines = (tmp_path / f"eigenvalues_trial{t:04d}.csv").read_text().splitlines()
        assert lines[0] == "lambda"
        assert len(lines) == 41
    svg = (tmp_path / "montecarlo.svg").read_text()
    assert svg.startswith("<svg ") and svg.rstrip().endswith("</svg>")


def test_montecarlo_histogram_masses_sum():
    report = run_montecarlo(cfg_of(n=50, r=[2], p=[0.3], trials=3, seed=2, bins=25))
    assert math.fsum(report["histogram"]["masses"]) == pytest.approx(1.0, abs=1e-9)
    assert len(report["histogram"]["edges"]) == 26


# ---------------------------------------------------------------------------
# verify


def test_verify_passes_and_exit_zero(capsys):
    assert main(
        [
            "verify",
            "--n", "4", "--r", "2,3", "--p", "0.5,0.5",
            "--trials", "4000", "--seed", "1", "--quiet",
        ]
    ) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    names = {c["name"] for c in report["checks"]}
    assert "oracle_m2_identity" in names
    assert "montecarlo_m4_vs_oracle" in names


def test_verify_report_structure():
    report = run_verify(cfg_of(n=4, r=[2, 3], p=[0.5, 0.5], trials=500, seed=0))
    m2 = next(c for c in report["checks"] if c["name"] == "oracle_m2_identity")
    assert m2["expected"] == pytest.approx(0.75, abs=1e-14)
    assert all(c["ok"] for c in report["checks"])


def test_verify_rejects_oversized_model(capsys):
    assert main(["verify", "--n", "10", "--r", "3", "--p", "0.5", "--trials", "10"]) == 2
    capsys.readouterr()
