"""Command line behavior: exit codes, error JSON, determinism, and the
documented golden outputs."""

import json
import subprocess
import sys

import pytest

from planeaut.cli import main
from planeaut.fields import FieldDescriptor

QQ_JSON = {"kind": "rationals"}
FX_JSON = {"kind": "rational-functions", "base": QQ_JSON, "variable": "x"}
IDENTITY = {"field": QQ_JSON,
            "components": [[[[1, 0], "1"]], [[[0, 1], "1"]]]}
HENON = {"field": QQ_JSON,
         "components": [[[[0, 1], "1"]],
                        [[[1, 0], "1"], [[0, 2], "-1"]]]}
NOT_AUT = {"field": QQ_JSON,
           "components": [[[[1, 0], "1"]], [[[1, 1], "1"]]]}


def _run(capsys, args, doc=None, path=None, tmp_path=None):
    if doc is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(doc))
        path = str(path)
    code = main(args + ([path] if path else []))
    return code, capsys.readouterr().out


def test_polydegree_identity_golden(capsys, tmp_path):
    code, out = _run(capsys, ["polydegree"], IDENTITY, tmp_path=tmp_path)
    assert code == 0
    assert out == '{\n  "polydegree": []\n}\n'


def test_polydegree_henon(capsys, tmp_path):
    code, out = _run(capsys, ["polydegree"], HENON, tmp_path=tmp_path)
    assert code == 0
    assert json.loads(out) == {"polydegree": [2]}


def test_decompose_rejects_with_exit_3(capsys, tmp_path):
    code, out = _run(capsys, ["decompose"], NOT_AUT, tmp_path=tmp_path)
    assert code == 3
    assert json.loads(out)["error"] == "NotAnAutomorphism"


def test_malformed_document_exits_2(capsys, tmp_path):
    code, out = _run(capsys, ["decompose"], {"nothing": True},
                     tmp_path=tmp_path)
    assert code == 2
    assert json.loads(out)["error"] == "SchemaError"


def test_unreadable_path_exits_2(capsys):
    code, out = _run(capsys, ["decompose"], path="no/such/file.json")
    assert code == 2
    assert json.loads(out)["error"] == "SchemaError"


def test_invert_compose_round_trip(capsys, tmp_path):
    code, out = _run(capsys, ["invert"], HENON, tmp_path=tmp_path)
    assert code == 0
    aut = json.loads(out)
    code, out = _run(capsys, ["compose"],
                     {"field": QQ_JSON, "maps": [aut["fwd"], aut["inv"]]},
                     tmp_path=tmp_path)
    assert code == 0
    assert json.loads(out) == json.loads(json.dumps(IDENTITY)) \
        or json.loads(out)["components"] == IDENTITY["components"]


def test_output_is_deterministic(capsys, tmp_path):
    _, first = _run(capsys, ["decompose"], HENON, tmp_path=tmp_path)
    _, second = _run(capsys, ["decompose"], HENON, tmp_path=tmp_path)
    assert first == second


def test_centralizer_torus_golden(capsys):
    code, out = _run(capsys, ["centralizer", "--weight", "2,1"])
    assert code == 0
    assert json.loads(out) == {"case": "monomial-triangular",
                               "parameters": 3, "swapped": False, "v": 2}


def test_centralizer_flag_validation(capsys):
    code, out = _run(capsys, ["centralizer", "--k", "2,1",
                              "--weight", "2,1"])
    assert code == 2
    code, out = _run(capsys, ["centralizer", "--k", "two"])
    assert code == 2


def test_centralizer_misaligned_action_exits_3(capsys):
    code, out = _run(capsys, ["centralizer", "--k", "4,1",
                              "--polydegree", "4"])
    assert code == 3


def test_linearize_involution(capsys, tmp_path):
    gen = {"components": [[[[1, 0], "-1"], [[0, 0], "2"]],
                          [[[0, 1], "-1"]]]}
    code, out = _run(capsys, ["linearize"],
                     {"field": QQ_JSON, "generators": [gen]},
                     tmp_path=tmp_path)
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] is True
    assert len(doc["rho"]) == 1


def _family_doc():
    one = {"num": ["1"], "den": ["1"]}
    mone = {"num": ["-1"], "den": ["1"]}
    b = {"num": ["0", "-1", "1"], "den": ["1"]}
    gen = {"components": [[[[1, 0], one], [[0, 1], b]], [[[0, 1], mone]]]}
    return {"group": {"kind": "cyclic", "order": 2}, "field": FX_JSON,
            "generators": [gen]}


def test_family_and_verify_round_trip(capsys, tmp_path):
    code, out = _run(capsys, ["family"], _family_doc(), tmp_path=tmp_path)
    assert code == 0
    report = json.loads(out)
    assert report["verified"] is True
    assert report["centers"] == ["0", "1"]
    code, out = _run(capsys, ["verify"],
                     {"family": _family_doc(), "report": report},
                     tmp_path=tmp_path)
    assert code == 0
    assert json.loads(out) == {"verified": True}


def test_verify_flags_tampering_with_exit_1(capsys, tmp_path):
    code, out = _run(capsys, ["family"], _family_doc(), tmp_path=tmp_path)
    report = json.loads(out)
    report["rho"][0]["matrix"][0][0] = "-1"
    code, out = _run(capsys, ["verify"],
                     {"family": _family_doc(), "report": report},
                     tmp_path=tmp_path)
    assert code == 1
    assert json.loads(out) == {"verified": False}


def test_remove_pole_subcommand(capsys, tmp_path):
    one = {"num": ["1"], "den": ["1"]}
    xinv = {"num": ["1"], "den": ["0", "1"]}
    doc = {"field": FX_JSON,
           "psi": {"components": [[[[1, 0], one], [[0, 2], xinv]],
                                  [[[0, 1], one]]]},
           "rhos": [{"matrix": [["1", "0"], ["0", "-1"]],
                     "translation": ["0", "0"]}]}
    code, out = _run(capsys, ["remove-pole", "--at", "0"], doc,
                     tmp_path=tmp_path)
    assert code == 0
    rep = json.loads(out)
    assert rep["initial_weight"] == 4
    assert [s["w_before"] for s in rep["trace"]] == [4, 1]


def test_selftest_suite_validation(capsys):
    code, out = _run(capsys, ["selftest", "--suite", "nonsense"])
    assert code == 2


def test_selftest_negative_suite(capsys):
    code, out = _run(capsys, ["selftest", "--suite", "negative"])
    assert code == 0
    assert out.startswith("PASS negative-controls")


def test_bad_usage_exits_2():
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_console_entry_point_runs():
    # one subprocess check that the installed script wiring works
    proc = subprocess.run(
        [sys.executable, "-m", "planeaut", "selftest", "--suite",
         "negative"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
