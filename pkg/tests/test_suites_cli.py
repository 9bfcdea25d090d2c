import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from qharmonic import E1, E2, CommutingTuple, ConfigError, write_tuple
from qharmonic.cli import main, parse_config_file, parse_unit
from qharmonic.suites import SUITES, SuiteConfig, run_suite


@pytest.fixture(scope="module")
def kernels_report():
    return run_suite("kernels", SuiteConfig())


def test_kernels_suite_size_and_speed(kernels_report):
    assert kernels_report.passed
    assert 80 <= len(kernels_report.checks) <= 300
    assert kernels_report.elapsed < 5.0


def test_riesz_suite_diagnostics():
    rep = run_suite("riesz", SuiteConfig())
    assert rep.passed
    names = {c.name for c in rep.checks}
    for fam in ("diag", "rotated2", "rotated3"):
        for kind in ("idempotency", "commutation", "f_variant", "inner_outer"):
            assert any(kind in n and fam in n for n in names), (fam, kind)
    assert all(c.residual < 1e-8 for c in rep.checks)


def test_reports_are_deterministic():
    a = run_suite("moments", SuiteConfig(seed=3)).to_dict()
    b = run_suite("moments", SuiteConfig(seed=3)).to_dict()
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b


def test_seed_changes_report():
    a = run_suite("resolvent", SuiteConfig(seed=1, pairs=2))
    b = run_suite("resolvent", SuiteConfig(seed=2, pairs=2))
    assert [c.residual for c in a.checks] != [c.residual for c in b.checks]


def test_tol_scale_applies(kernels_report):
    rep = run_suite("kernels", SuiteConfig(tol_scale=2.0))
    assert [c.tol for c in rep.checks] == [2.0 * c.tol for c in kernels_report.checks]


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig(nodes=33)
    with pytest.raises(ConfigError):
        SuiteConfig(tol_scale=0)
    with pytest.raises(ConfigError):
        run_suite("nope", SuiteConfig())


def test_report_json_fields(kernels_report):
    d = json.loads(kernels_report.to_json())
    assert d["suite"] == "kernels" and d["nodes"] == 128
    assert set(d["checks"][0]) == {"name", "paper_ref", "residual", "tol", "pass", "params"}


def test_every_suite_has_checks():
    assert set(SUITES) >= {"kernels", "series", "scalar", "calculus", "moments", "resolvent", "riesz", "vanishing"}


# CLI ---------------------------------------------------------------------------------


def test_parse_unit():
    assert parse_unit("J=0,3,4") == parse_unit("0,0.6,0.8")
    for bad in ("J=1,2", "0,0,0", "a,b,c"):
        with pytest.raises(ConfigError):
            parse_unit(bad)


def test_parse_config_file(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("# comment\nsuite = moments\ntol-scale = 2.5  # inline\nseed=4\n")
    assert parse_config_file(p) == {"suite": "moments", "tol_scale": 2.5, "seed": 4}
    p.write_text("colour = red\n")
    with pytest.raises(ConfigError):
        parse_config_file(p)
    p.write_text("nodes = many\n")
    with pytest.raises(ConfigError):
        parse_config_file(p)


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["verify", "--suite", "moments"]) == 0
    assert main(["verify", "--suite", "moments", "--tol-scale", "1e-12"]) == 1
    assert main(["verify", "--suite", "bogus"]) == 2
    assert main(["verify", "--nodes", "31"]) == 2
    assert main(["verify", "--suite", "moments", "--tuple", str(tmp_path / "missing.txt")]) == 2
    assert main(["frobnicate"]) == 2
    assert "configuration error" in capsys.readouterr().err


def test_cli_json_and_csv(tmp_path):
    js, cv = tmp_path / "r.json", tmp_path / "r.csv"
    assert main(["verify", "--suite", "moments", "--json", str(js), "--csv", str(cv)]) == 0
    d = json.loads(js.read_text())
    assert d["suite"] == "moments" and all(c["pass"] for c in d["checks"])
    rows = list(csv.reader(cv.open()))
    assert rows[0] == ["suite", "check", "N", "residual"]
    assert {int(r[2]) for r in rows[1:]} == {32, 64, 128, 256}


def test_cli_flags_override_config(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("suite = moments\nseed = 5\nnodes = 256\n")
    js = tmp_path / "r.json"
    assert main(["verify", "--config", str(cfg), "--seed", "9", "--json", str(js)]) == 0
    d = json.loads(js.read_text())
    assert d["seed"] == 9 and d["nodes"] == 256 and d["suite"] == "moments"


def test_cli_json_stdout_is_clean(capsys):
    assert main(["verify", "--suite", "series", "--json", "-"]) == 0
    out = capsys.readouterr()
    assert json.loads(out.out)["suite"] == "series"
    assert "checks passed" in out.err


def test_cli_user_tuple(tmp_path):
    path = tmp_path / "T.txt"
    write_tuple(CommutingTuple.diagonal([0.5 * E1, 0.2 + 0.3 * E2]), path)
    js = tmp_path / "r.json"
    assert main(["verify", "--suite", "calculus", "--tuple", str(path), "--json", str(js)]) == 0
    assert all(c["pass"] for c in json.loads(js.read_text())["checks"])
    path.write_text("1 2\n3 4\n\n0\n")
    assert main(["verify", "--suite", "calculus", "--tuple", str(path)]) == 2


def test_cli_unit_flag(tmp_path):
    js = tmp_path / "r.json"
    assert main(["verify", "--suite", "scalar", "--unit", "J=1,1,1", "--json", str(js)]) == 0
    assert main(["verify", "--suite", "scalar", "--unit", "J=0,0,0"]) == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "qharmonic", "verify", "--suite", "series"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "checks passed" in proc.stdout


def test_suite_config_accepts_numpy_seed_types():
    rep = run_suite("series", SuiteConfig(seed=int(np.int64(4))))
    assert rep.seed == 4
