import json

import numpy as np
import pytest

from privgp.cli import main
from privgp.gp import Dataset, write_csv


def run_ok(argv, capsys):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def run_err(argv, capsys):
    assert main(argv) == 1
    return json.loads(capsys.readouterr().err)


@pytest.fixture
def workdir(tmp_path):
    X = np.arange(1, 10) / 10
    write_csv(tmp_path / "data.csv", Dataset(X, np.sin(3 * X)))
    (tmp_path / "kernel.json").write_text(json.dumps({"family": "sqexp", "c": 1.0, "theta": 10.0, "d": 1}))
    # the fitted signal variance of this data is about 0.116
    (tmp_path / "privacy.json").write_text(json.dumps({"variant": "single", "s": [0.5], "xi": 0.05}))
    return tmp_path


def test_example1_outputs_and_determinism(tmp_path, capsys):
    a = run_ok(["example1", "--out", str(tmp_path / "a")], capsys)
    run_ok(["example1", "--out", str(tmp_path / "b")], capsys)
    assert a["var_at_s"] >= 0.5 - 1e-6 and a["trace_diag"] >= a["trace_opt"]
    for name in ("sigma_opt.csv", "noise_variances.csv", "predictive_variance.csv", "summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    lines = (tmp_path / "a" / "predictive_variance.csv").read_text().splitlines()
    assert lines[0] == "x,diagonal,proposed,unsecured" and len(lines) == 202


def test_example2(tmp_path, capsys):
    s = run_ok(["example2", "--out", str(tmp_path), "--c", "0.17", "0.3", "0.5"], capsys)
    rows = (tmp_path / "traces.csv").read_text().splitlines()[1:]
    assert rows[0].endswith("InvalidXi") and rows[1].endswith("ok")
    np.testing.assert_allclose(s["var_weak_at_S"], 0.5, atol=1e-3)


def test_example3_json_format(tmp_path, capsys):
    s = run_ok(["example3", "--out", str(tmp_path), "--format", "json"], capsys)
    assert s["agree_with_closed_form"] == s["probes"]
    probes = json.loads((tmp_path / "probes.json").read_text())
    assert probes["columns"][:3] == ["d", "c", "theta"]


def test_satellite(tmp_path, capsys):
    s = run_ok(["satellite", "--out", str(tmp_path), "--alphas", "0.1"], capsys)
    assert s["reports"][0]["min_var_minus_floor_inside"] >= -1e-6
    for name in ("data.csv", "segments.json", "band_H0p1.csv", "released_H0p1.json"):
        assert (tmp_path / name).exists()


def test_generic_workflow(workdir, capsys):
    out = workdir / "out"
    fit = run_ok(["fit", "--data", str(workdir / "data.csv"), "--kernel", str(workdir / "kernel.json"),
                  "--out", str(out)], capsys)
    assert fit["variance"] > 0
    noise = run_ok(["solve-noise", "--data", str(workdir / "data.csv"), "--model", fit["model"],
                    "--privacy", str(workdir / "privacy.json"), "--out", str(out)], capsys)
    assert noise["min_floor_slack"] >= -1e-6 and noise["provenance"] == "SingleClosedForm"
    ob = run_ok(["obfuscate", "--data", str(workdir / "data.csv"), "--sigma", str(out / "sigma.csv"),
                 "--seed", "9", "--out", str(out)], capsys)
    assert ob["seed"] == 9


def test_pipeline_and_predict(workdir, capsys):
    (workdir / "cfg.json").write_text(json.dumps({
        "dataset": "data.csv", "kernel": {"family": "sqexp", "c": 1.0, "theta": 10.0, "d": 1},
        "privacy": {"variant": "kernel", "H": {"family": "scaled", "alpha": 0.2, "base": "model"},
                    "region": {"type": "grid", "lo": [0.4], "hi": [0.6], "points": 9}},
        "seed": 2,
    }))
    res = run_ok(["pipeline", "--config", str(workdir / "cfg.json"), "--out", str(workdir / "rel")], capsys)
    assert res["provenance"] == "KernelGrid" and res["min_floor_slack"] >= -1e-6
    run_ok(["predict", "--released", res["released"], "--grid", "0", "1", "11",
            "--out", str(workdir / "pred")], capsys)
    lines = (workdir / "pred" / "predictions.csv").read_text().splitlines()
    assert lines[0] == "x_1,mean,variance,std" and len(lines) == 12


def test_missing_file_is_json_error(tmp_path, capsys):
    err = run_err(["predict", "--released", str(tmp_path / "nope.json"), "--grid", "0", "1", "3",
                   "--out", str(tmp_path)], capsys)
    assert err["error"] == "format_error" and "message" in err


def test_invalid_tolerance_is_json_error(tmp_path, capsys):
    err = run_err(["example1", "--xi", "1.5", "--out", str(tmp_path)], capsys)
    assert err["error"] == "invalid_tolerance"


def test_pipeline_requires_config(tmp_path, capsys):
    assert run_err(["pipeline", "--out", str(tmp_path)], capsys)["error"] == "privgp_error"
