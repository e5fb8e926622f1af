from __future__ import annotations

import json

import pytest

from qsuper.affine import ConfigError
from qsuper.cli import (
    SUITE_IDS, SuiteConfig, config_from_args, main, render, run_suite, x_tables,
)


def strip_timing(text: str) -> dict:
    doc = json.loads(text)
    reports = doc["reports"] if "reports" in doc else [doc]
    for rep in reports:
        for rec in rep["results"]:
            rec.pop("ms", None)
    return doc


def test_suite_ids_cover_every_runner():
    assert len(SUITE_IDS) == 15
    assert "vertex-ybe" in SUITE_IDS and "root-data" in SUITE_IDS


def test_graded_ybe_report_at_fixed_q():
    rep = run_suite(SuiteConfig(suite="graded-ybe", q="7/5", q_samples=5))
    identities = [r for r in rep.records if r.kind == "identity"]
    assert rep.passed
    assert len(identities) == 7          # 5 at theta = 1, 2 with mixed theta
    assert all(r.witness is None for r in identities)
    control = [r for r in rep.records if r.kind == "control"]
    assert len(control) == 1 and control[0].witness is not None


def test_json_schema_of_passing_suite(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "drinfeld", "--modes", "2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"suite", "config", "results", "version"}
    assert doc["suite"] == "drinfeld"
    assert doc["config"]["modes"] == 2
    for rec in doc["results"]:
        assert rec["status"] == "pass"
        assert {"id", "status", "ms"} <= set(rec)


def test_control_witness_has_exponents_and_entry(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "face-diff-eq", "--order-p", "2", "--order-z", "2",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    control = [r for r in doc["results"] if r["kind"] == "control"][0]
    assert control["status"] == "pass" and not control["residual_zero"]
    w = control["witness"]
    assert w["exponents"] == {"p": 1, "z": 1}
    assert {"row", "col", "coefficient"} <= set(w)


def test_csv_header(capsys):
    assert main(["--suite", "vertex-product-vs-closed", "--format", "csv",
                 "--order-p", "2", "--order-zeta", "2"]) == 0
    out = capsys.readouterr().out
    assert "# X12\np_half_order,zeta_order,num,den\n" in out


def test_csv_files_written(tmp_path):
    out = tmp_path / "x.csv"
    assert main(["--suite", "vertex-product-vs-closed", "--format", "csv",
                 "--order-p", "2", "--order-zeta", "2", "--out", str(out)]) == 0
    for name in ("X11", "X12", "X21", "X22"):
        text = (tmp_path / f"x_{name}.csv").read_text()
        assert text.splitlines()[0] == "p_half_order,zeta_order,num,den"


def test_x_tables_direct():
    tables = x_tables(SuiteConfig(suite="vertex-product-vs-closed", order_p=2, order_zeta=2))
    assert set(tables) == {"X11", "X12", "X21", "X22"}


@pytest.mark.parametrize("argv", [
    ["--suite", "face-diff-eq", "--order-p", "0"],
    ["--suite", "nope"],
    ["--suite", "face-initial", "--w-mode", "1"],
    ["--suite", "drinfeld", "--q", "1"],
    ["--suite", "drinfeld", "--theta", "0"],
    ["--suite", "graded-ybe", "--format", "csv"],
])
def test_configuration_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "configuration error" in capsys.readouterr().err


def test_term_budget_aborts_loudly(capsys):
    assert main(["--suite", "face-diff-eq", "--term-budget", "5"]) == 2
    assert "term budget" in capsys.readouterr().err


def test_unwritable_output_reports_path(capsys, tmp_path):
    bad = tmp_path / "missing" / "r.json"
    assert main(["--suite", "drinfeld", "--modes", "1", "--out", str(bad)]) == 2
    assert str(bad) in capsys.readouterr().err


def test_failing_suite_exits_1(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "root-data", "--n", "2", "--xi", "0", "--out", str(out)]) == 1


def test_passing_root_data_rank_one(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "root-data", "--n", "1", "--xi", "0", "--out", str(out)]) == 0


def test_config_file_and_flag_override(tmp_path):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps({"suite": "graded-ybe", "q": "7/5", "q-samples": 2, "seed": 3}))
    cfg = config_from_args(["--config", str(cfg_file), "--seed", "9"])
    assert cfg.suite == "graded-ybe" and cfg.q == "7/5" and cfg.q_samples == 2
    assert cfg.seed == 9


def test_config_file_unknown_key(tmp_path):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ConfigError):
        config_from_args(["--config", str(cfg_file)])


def test_same_seed_same_report():
    cfg = SuiteConfig(suite="graded-ybe", q_samples=2, seed=4)
    a = render([run_suite(cfg)], "json", timing=False)
    b = render([run_suite(cfg)], "json", timing=False)
    assert a == b
    c = render([run_suite(SuiteConfig(suite="graded-ybe", q_samples=2, seed=5))], "json", timing=False)
    assert a != c


def test_workers_give_same_reports(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["--suite", "drinfeld,qseries-identities", "--modes", "2", "--order-p", "3"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--workers", "2", "--out", str(b)]) == 0
    da, db = strip_timing(a.read_text()), strip_timing(b.read_text())
    for doc in (da, db):
        for rep in doc["reports"]:
            rep["config"].pop("workers")
            rep["config"].pop("out")
    assert da == db


def test_text_format(capsys):
    assert main(["--suite", "qseries-identities", "--order-p", "3", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("suite qseries-identities: PASS")
    assert "(control)" in out
