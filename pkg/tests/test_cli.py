import json
import os

import pytest
from click.testing import CliRunner

from lcartan.cli.config import ConfigError, RunConfig
from lcartan.cli.main import cli
from lcartan.cli.report import VerificationReport, write_report


def run(tmp_path, *args):
    res = CliRunner().invoke(cli, ["--out", str(tmp_path)] + list(args))
    return res


def report_json(res):
    path = next(l.split(": ", 1)[1] for l in res.output.splitlines() if l.startswith("report: "))
    with open(path) as fh:
        return json.load(fh)


def test_config_round_trip():
    cfg = RunConfig.from_mapping({"kind": "w", "n": 2, "window": "-1:4", "weights": ["1,0", [2, 1]], "caps": "3,4"})
    assert RunConfig.parse_text(cfg.to_text()) == cfg
    assert RunConfig.parse_text(cfg.to_text()).to_text() == cfg.to_text()


@pytest.mark.parametrize("data", [{"kind": "H", "n": 3}, {"kind": "S", "n": 1}, {"kind": "W", "window": "3:1"},
                                  {"kind": "W", "n": 2, "weights": ["-1,2"]}, {"colour": "blue"}])
def test_config_rejections(data):
    with pytest.raises(ConfigError):
        RunConfig.from_mapping(data)


def test_digest_ignores_output_location():
    a = RunConfig.from_mapping({"out_dir": "x", "jobs": 1})
    b = RunConfig.from_mapping({"out_dir": "y", "jobs": 4})
    assert a.digest("algebra") == b.digest("algebra")
    assert a.digest("algebra") != RunConfig.from_mapping({"seed": 1}).digest("algebra")


def test_config_file(tmp_path):
    p = tmp_path / "run.toml"
    p.write_text('kind = "H"\nn = 2\nwindow = [-1, 2]\n')
    res = CliRunner().invoke(cli, ["--config", str(p), "--out", str(tmp_path / "r"), "algebra"])
    assert res.exit_code == 0, res.output
    assert "sp(2)" in res.output


def test_algebra_dims(tmp_path):
    res = run(tmp_path, "algebra", "--kind", "W", "--n", "2", "--window", "-1:3")
    assert res.exit_code == 0, res.output
    rep = report_json(res)
    assert [rep["artifacts"]["dims"][str(k)] for k in range(-1, 4)] == [2, 4, 6, 8, 10]
    res = run(tmp_path, "algebra", "--kind", "W", "--n", "2", "--window", "-1:4")
    assert report_json(res)["artifacts"]["dims"]["4"] == 12


def test_algebra_bad_kind(tmp_path):
    res = run(tmp_path, "algebra", "--kind", "S", "--n", "1")
    assert res.exit_code == 2
    assert "config error" in res.output


def test_module_command(tmp_path):
    res = run(tmp_path, "module", "--kind", "W", "--n", "2", "--window", "0:4", "--v-lambda", "1,0",
              "--v-lambda", "2,-1", "--delta-r", "0,0")
    assert res.exit_code == 0, res.output
    rep = report_json(res)
    names = {c["name"]: c["status"] for c in rep["checks"]}
    assert names["V[1, 0] LC-1"] == "pass"
    assert names["V[1, 0] freeness"] == "pass"
    assert names["DR[0, 0] quotient dims = built V(lambda)"] == "pass"
    res = run(tmp_path, "module", "--kind", "W", "--n", "2", "--v-lambda", "-1,2")
    assert res.exit_code == 2


def test_hom_command(tmp_path):
    res = run(tmp_path, "hom", "--kind", "W", "--n", "2", "--window", "0:3", "--source", "V:1,0@0",
              "--source", "DR:0,0", "--target", "V:1,0@0", "--target", "V:0,0@0", "--target", "DR:0,0")
    assert res.exit_code == 0, res.output
    table = {(r["source"], r["target"]): r["dim"] for r in report_json(res)["artifacts"]["table"]}
    assert table[("V:1,0@0", "V:1,0@0")] == 1
    assert table[("V:1,0@0", "V:0,0@0")] == 0
    assert table[("DR:0,0", "DR:0,0")] == 1
    assert table[("DR:0,0", "V:0,0@0")] == 1


def test_cohomology_command(tmp_path):
    res = run(tmp_path, "cohomology", "--ce", "gl2", "--koszul", "W2", "--strands", "0:4", "--ulc", "W1",
              "--q", "0:1", "--caps", "3,4,5")
    assert res.exit_code == 0, res.output
    rep = report_json(res)
    assert rep["artifacts"]["ce"]["betti"] == [1, 1, 0, 1, 1]
    assert rep["artifacts"]["ulc"]["betti"] == [1, 1]
    assert any(f.startswith("betti-") for f in os.listdir(tmp_path))


def test_cohomology_ce_cap_is_a_skip(tmp_path):
    res = run(tmp_path, "cohomology", "--ce", "gl4")
    assert res.exit_code == 0
    assert report_json(res)["checks"][0]["status"] == "skipped"


def test_natalg_command(tmp_path):
    res = run(tmp_path, "natalg", "--kind", "W", "--n", "1", "--window", "-1:3", "--samples", "20")
    assert res.exit_code == 0, res.output
    checks = {c["name"]: c for c in report_json(res)["checks"]}
    assert checks["(N4) (a⊗1)(1⊗X) = a⊗X"]["status"] == "pass"
    assert checks["(N5) sign audit is definitive"]["status"] == "pass"


def test_csv_format(tmp_path):
    res = run(tmp_path, "--format", "csv", "algebra", "--kind", "W", "--n", "1", "--window", "-1:2")
    assert res.exit_code == 0
    path = res.output.strip().splitlines()[-1].split(": ", 1)[1]
    assert path.endswith(".csv")
    assert open(path).readline().startswith("suite,check,status")


def test_failing_report_exit_code():
    rep = VerificationReport("x", {})
    rep.add("good", True)
    assert rep.exit_code == 0
    rep.add("bad", False, witness={"k": 1})
    assert rep.failed and rep.exit_code == 1


def test_reports_are_append_only(tmp_path):
    a = write_report("one", str(tmp_path), "r", "json")
    assert write_report("one", str(tmp_path), "r", "json") == a
    b = write_report("two", str(tmp_path), "r", "json")
    assert b != a and open(a).read() == "one"
