import json
from pathlib import Path

import jsonschema
import pytest

from wplimits.chains import build_chain
from wplimits.cli import body, build_parser, load_schema, main, run
from wplimits.invariants import GenusProfile

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"


def call(*argv):
    return run(build_parser().parse_args([str(a) for a in argv]))


def test_invariants_report():
    code, rep = call("invariants", "--g1", 2, "--g2", 3, "--delta", 2)
    assert code == 0 and rep["status"] == "ok"
    res = rep["results"]
    assert res["g"] == 6 and res["total_degree"] == 210
    assert res["irreducible"] is False and res["component_count"] == 5


def test_irreducible_profile():
    code, rep = call("invariants", "--g1", 1, "--g2", 1, "--delta", 2)
    assert code == 0 and rep["results"]["irreducible"] is True


def test_non_semistable_is_a_precondition_failure():
    code, rep = call("invariants", "--g1", 0, "--g2", 0, "--delta", 1)
    assert code == 2 and rep["status"] == "precondition"


@pytest.mark.slow
def test_limit_divisor_on_frozen_problem():
    code, rep = call("limit-divisor", PROBLEMS / "g2g3d2.json")
    assert code == 0
    assert rep["results"]["total_degree"] == 210


def test_conjugate_pair_problem():
    code, rep = call("conditions", PROBLEMS / "conjugate-pair.json")
    assert code == 0
    drop = rep["results"]["i=1"]["h0_drop"]
    assert drop["holds"] is False and drop["witness"] == 1
    code, rep = call("limit-divisor", PROBLEMS / "conjugate-pair.json")
    assert code == 2 and rep["error"]["kind"] == "GenericityError"


def test_orbit_command():
    code, rep = call("orbit", PROBLEMS / "g2g3d2.json")
    assert code == 0
    assert rep["results"]["single1"]["dimension"] == 1
    assert rep["results"]["single2"]["kind"] == "singleton"
    assert rep["results"]["pair"]["member"] is True


def test_chain_command():
    code, rep = call("chain", "--g1", 2, "--g2", 3, "--delta", 2)
    assert code == 0
    assert rep["results"]["chain"]["genus"] == 6
    assert rep["results"]["feasible"]["uniqueness_certified"] is False


def test_schema_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"profile": {"g1": 1, "g2": 1, "delta": 2}, "colour": "red"}))
    code, rep = call("invariants", bad)
    assert code == 3 and rep["status"] == "schema"
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert call("invariants", broken)[0] == 3


def test_selftest_modes():
    code, rep = call("selftest", "--size", 0)
    assert code == 0 and rep["results"]["failures"] == []
    code, rep = call("selftest")
    assert code == 0 and all(v == 5 for v in rep["results"]["passed"].values())
    code, rep = call("selftest", "--mutate")
    assert code == 4 and rep["status"] == "failed"
    assert {f["check"] for f in rep["results"]["failures"]} == {"riemann_roch"}


def test_reports_are_deterministic():
    a = call("smoothable", "--g1", 2, "--g2", 3, "--delta", 2, "--seed", 3)[1]
    b = call("smoothable", "--g1", 2, "--g2", 3, "--delta", 2, "--seed", 3)[1]
    assert json.dumps(body(a), sort_keys=True) == json.dumps(body(b), sort_keys=True)


def test_report_round_trip(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["h0", "--g1", "1", "--g2", "2", "--delta", "2", "--out", str(out)]) == 0
    printed = json.loads(capsys.readouterr().out)
    saved = json.loads(out.read_text())
    assert body(printed) == body(saved)
    jsonschema.validate(saved, load_schema("report"))
    # the echoed input is itself a valid problem and reproduces the results
    problem = tmp_path / "problem.json"
    problem.write_text(json.dumps(saved["input"]))
    again = call("h0", problem)[1]
    assert again["results"] == saved["results"]


def test_chain_lambda_echo(tmp_path):
    chain = build_chain(GenusProfile(2, 3, 2), (2, 1))
    p = tmp_path / "chain.json"
    p.write_text(json.dumps({"profile": {"g1": 2, "g2": 3, "delta": 2}, "mu": [2, 1],
                             "lambda": {"E_1_1": 1, "C2": 2}, "i": 1}))
    code, rep = call("chain", p)
    assert code == 0
    degs = rep["results"]["lambda"]["degrees"]
    assert set(degs) == set(chain.vertices) and sum(degs.values()) == 10
