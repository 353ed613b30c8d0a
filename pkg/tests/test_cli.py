import io
import json
import subprocess
import sys

import pytest

from cokasch.cli import (
    dumps_workspace,
    load_workspace,
    main,
    module_to_dict,
    ring_to_dict,
    workspace_to_dict,
)
from cokasch.fixtures import random_rings


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_check_cokasch_e11R():
    code, out, _ = run("check-cokasch", "--module", "e11R", "--format", "json")
    assert code == 0
    (rec,) = records(out)
    assert rec["verdict"] is False and rec["witness"]["simple"] == "S2"
    assert rec["witness"]["simple_action"] == [[[0]], [[0]], [[1]]]


def test_cartan_t2():
    code, out, _ = run("cartan", "--ring", "T2F2", "--format", "json")
    assert code == 0 and records(out)[0]["cartan"] == [[1, 1], [0, 1]]
    code, out, _ = run("cartan", "T2F2")
    assert out.strip() == "cartan T2F2: [[1,1], [0,1]]"


def test_verify_310():
    code, out, _ = run("verify", "--prop", "3.10", "--ring", "all", "--seed", "7", "--format", "json")
    assert code == 0
    (rec,) = records(out)
    assert rec["verdict"] is True and rec["instances"] == len(rec["rings"]) > 5


def test_other_commands():
    code, out, _ = run("check-kasch", "--module", "e11R", "--format", "json")
    assert records(out)[0]["witness"]["simple"] == "S1"
    code, out, _ = run("check-hring", "--ring", "T2F2", "--format", "json")
    rec = records(out)[0]
    assert rec["verdict"] is False and rec["witness"]["pair"] == [0, 1] and rec["witness"]["cocycle"] == [[1]]
    code, out, _ = run("witness-hring", "--ring", "T2F2", "--format", "json")
    w = records(out)[0]["witness"]
    assert w["co_kasch"] is False and w["isomorphic_to_principal"] is True
    code, out, _ = run("witness-hring", "--ring", "Z4", "--format", "json")
    assert records(out)[0]["verdict"] is True
    code, out, _ = run("simples", "--ring", "T2F2", "--format", "json")
    assert [s["cover_idempotent"] for s in records(out)[0]["simples"]] == [[1, 0, 0], [0, 0, 1]]
    code, out, _ = run("check-z", "--zmodule", "Q + Z/6", "--format", "json")
    rec = records(out)[0]
    assert rec["verdict"] is False and rec["witness"]["prime"] == 5
    code, out, _ = run("check-z", "Z+Q")
    assert out.strip() == "check-z Z+Q: true"
    code, out, _ = run("validate")
    assert code == 0 and "validate T2F2: ok (ring)" in out
    code, out, _ = run("check-cokasch", "T2F2", "--format", "json")
    assert records(out)[0]["verdict"] is True  # regular module of a ring name


def test_run_executes_workspace_tasks():
    code, out, _ = run("run", "--format", "json")
    recs = records(out)
    assert code == 0
    assert [r["index"] for r in recs] == sorted(r["index"] for r in recs)
    assert {r["task"] for r in recs} >= {"validate", "cartan", "check-cokasch", "witness-hring", "check-z"}


def test_timings_are_opt_in():
    _, out, _ = run("cartan", "--ring", "Z4", "--format", "json")
    assert "timings" not in records(out)[0]
    _, out, _ = run("cartan", "--ring", "Z4", "--format", "json", "--timings")
    assert records(out)[0]["timings"]["seconds"] >= 0


def test_same_seed_same_bytes():
    args = ("verify", "--prop", "2.7", "--seed", "11", "--random-rings", "2", "--format", "json")
    assert run(*args)[1] == run(*args)[1]


@pytest.mark.parametrize("doc,location", [
    ({"rings": {"bad": {"orders": [2], "mul": [[[1]]], "one": [0]}}}, "rings.bad"),
    ({"rings": {"bad": {"orders": [2], "mul": [[["x"]]], "one": [1]}}}, "rings.bad.mul[0][0][0]"),
    ({"rings": {"F2": {"orders": [2], "mul": [[[1]]], "one": [1]}},
      "modules": {"m": {"ring": "nope", "orders": [2], "action": {"0": [[1]]}}}}, "modules.m.ring"),
    ({"rings": {"F2": {"orders": [2], "mul": [[[1]]], "one": [1]}},
      "modules": {"m": {"ring": "F2", "orders": [2], "action": {"0": [[0]]}}}}, "modules.m"),
    ({"zmodules": {"z": "Z/1"}}, "zmodules.z"),
    ({"tasks": [["frobnicate", "x"]]}, "tasks[0]"),
    ({"rings": {}, "extra": 1}, "<workspace>"),
])
def test_validation_errors_have_locations(tmp_path, doc, location):
    path = tmp_path / "ws.json"
    path.write_text(json.dumps(doc))
    code, out, err = run("validate", "--workspace", str(path))
    assert code == 2 and out == ""
    assert err.startswith("error: ")
    loc = err[len("error: "):]
    assert loc.startswith(location if location != "<workspace>" else str(path))


def test_json_syntax_error_location(tmp_path):
    path = tmp_path / "ws.json"
    path.write_text('{"rings": {\n  "F2": [}')
    code, _, err = run("validate", "--workspace", str(path))
    assert code == 2 and f"{path}:2:" in err


def test_unknown_target_and_prop():
    assert run("cartan", "--ring", "nope")[0] == 2
    assert run("verify", "--prop", "9.9", "--ring", "F2")[0] == 2
    assert run("check-cokasch")[0] == 2


def test_round_trip_random_rings(tmp_path):
    from cokasch.module import regular_module

    ws = load_workspace(None)
    doc = workspace_to_dict(ws)
    for i, R in enumerate(random_rings(5, 20, 64)):
        doc["rings"][f"r{i}"] = ring_to_dict(R)
        doc["modules"][f"m{i}"] = module_to_dict(regular_module(R), f"r{i}")
    path = tmp_path / "ws.json"
    path.write_text(dumps_workspace(doc))
    again = load_workspace(str(path))
    assert workspace_to_dict(again) == doc
    for i, R in enumerate(random_rings(5, 20, 64)):
        assert again.rings[f"r{i}"] == R
        assert again.modules[f"m{i}"] == regular_module(R)
    assert again.zmodules == ws.zmodules


def test_workspace_file_and_console_entry(tmp_path):
    ws = workspace_to_dict(load_workspace(None))
    ws["tasks"] = [["cartan", "F2xF2"], ["check-cokasch", "e11R"]]
    path = tmp_path / "ws.json"
    path.write_text(dumps_workspace(ws))
    proc = subprocess.run([sys.executable, "-m", "cokasch", "run", "--workspace", str(path), "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    recs = records(proc.stdout)
    assert recs[0]["cartan"] == [[1, 0], [0, 1]] and recs[1]["verdict"] is False


def test_verify_failure_exit_code(monkeypatch):
    from cokasch import oracle

    def broken(h, name, res):
        res.instances += 1
        res.failures.append(f"[{name}] synthetic failure")

    monkeypatch.setitem(oracle.PROPOSITIONS, "3.1", broken)
    code, out, _ = run("verify", "--prop", "3.1", "--ring", "F2", "--format", "json")
    assert code == 1 and records(out)[0]["verdict"] is False
