import json
import subprocess
import sys

import pytest

from lagfib.cli import main
from lagfib.fibration import FibrationSpec, verify

K3 = ["--series", "K2", "--m", "3", "--delta", "0", "--x", "1", "--y", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_cohomology_example(capsys):
    code, out = run_json(capsys, "cohomology", *K3)
    assert code == 0 and out["rank"] == 0 and out["torsion"] == [2, 3]
    assert out["twisting"] == {"ambient": "trivial"}


def test_enumerate_count(capsys):
    code, out = run_json(capsys, "enumerate", *K3)
    assert code == 0 and isinstance(out, list) and len(out) == 6
    for rec in out:
        assert verify(FibrationSpec.from_json(rec)).ok


def test_enumerate_summary(capsys):
    code, out = run_json(capsys, "enumerate", "--summary", "--series", "K2", "--m", "0", "--delta", "0",
                         "--x", "1", "--y", "1")
    assert code == 0 and out["complete"] is False and out["count"] is None


def test_normalize_empty(capsys):
    code, out = run_json(capsys, "normalize")
    assert code == 0 and out["series"] == "R2"
    code, out = run_json(capsys, "normalize", "--json", '{"generators": []}')
    assert out["series"] == "R2"


def test_normalize_klein(capsys):
    gens = [{"linear": [["1", "2"], ["0", "1"]], "translation": ["1", "1"]},
            {"linear": [["1", "0"], ["0", "-1"]], "translation": ["3", "0"]}]
    code, out = run_json(capsys, "normalize", "--json", json.dumps({"generators": gens}))
    assert code == 0 and out["series"] == "K2" and out["verified"] is True


def test_isomorphic(capsys):
    a = {"series": "T2uvwz", "params": {"u": 1, "v": 0, "w": 0, "z": 2}}
    b = {"series": "T2uvwz", "params": {"u": 2, "v": 0, "w": 0, "z": 1}}
    code, out = run_json(capsys, "isomorphic", "--json", json.dumps([a, b]))
    assert code == 0 and out["isomorphic"] is True and out["witness"] is not None
    c = {"series": "T2uvwz", "params": {"u": 1, "v": 0, "w": 0, "z": 3}}
    code, out = run_json(capsys, "isomorphic", "--json", json.dumps({"lattices": [a, c]}))
    assert out == {"isomorphic": False, "witness": None}


def test_build_verify_pipeline(capsys, tmp_path):
    path = tmp_path / "spec.json"
    code, _ = run(capsys, "build", "--series", "T2nyx", "--m", "2", "--x", "1", "--y", "1/2",
                  "--m0", "1", "--n0", "3", "--lambda", "2/3", "--out", str(path))
    assert code == 0
    code, out = run_json(capsys, "verify", "--input", str(path), "--classify")
    assert code == 0 and out["pass"] is True
    assert out["classification"]["obstruction"] == [1, 1]
    assert [c["check"] for c in out["checks"]] == ["fibre_preserving", "symplectic", "base_action",
                                                   "relations", "fibre_lattice"]


def test_build_t3(capsys):
    code, out = run_json(capsys, "build", "--t3")
    assert code == 0 and out["kind"] == "t3"
    assert verify(FibrationSpec.from_json(out)).ok


def test_verify_failure_exit_code(capsys):
    code, out = run_json(capsys, "build", *K3, "--m0", "1", "--n0", "1")
    # one slot of h alone: the form is no longer preserved and the relation breaks
    out["maps"]["h"]["linear"][3][0] = "3/2"
    code, rep = run_json(capsys, "verify", "--json", json.dumps(out))
    assert code == 3 and rep["pass"] is False
    assert {c["check"] for c in rep["checks"] if not c["pass"]} == {"symplectic", "relations"}


def test_classify(capsys):
    code, spec = run_json(capsys, "build", *K3, "--m0", "5", "--n0", "7")
    code, out = run_json(capsys, "classify", "--json", json.dumps(spec))
    assert code == 0 and out["obstruction"] == [1, 1] and out["twisting"] == "trivial"


def test_render(capsys, tmp_path):
    code, out = run(capsys, "render-domain", *K3)
    assert code == 0 and out.startswith("<svg") and out.rstrip().endswith("</svg>")
    assert out.count('marker-end="url(#tip)"') >= 6
    path = tmp_path / "d.svg"
    assert main(["render-domain", "--series", "T2uvwz", "--u", "1", "--v", "0", "--w", "1", "--z", "2",
                 "--out", str(path)]) == 0
    assert path.read_text().startswith("<svg")


@pytest.mark.parametrize("argv,code,kind", [
    (["frobnicate"], 1, "parse_error"),
    ([], 1, "parse_error"),
    (["cohomology", "--json", "{not json"], 1, "parse_error"),
    (["cohomology", "--series", "K2", "--m", "1", "--delta", "1", "--x", "1", "--y", "1"], 2, None),
    (["cohomology", "--series", "K2", "--m", "1", "--delta", "0", "--x", "0.5", "--y", "sqrt(2)"], 2, None),
    (["normalize", "--json", '{"generators": [{"linear": [["1","0"],["0","-1"]], "translation": ["0","0"]}]}'],
     2, None),
])
def test_error_exit_codes(capsys, argv, code, kind):
    got, out = run(capsys, *argv)
    assert got == code
    err = json.loads(out)
    assert "error" in err and "message" in err
    if kind:
        assert err["error"] == kind


def test_irrational_error_name(capsys):
    got, out = run(capsys, "cohomology", "--series", "T2nyx", "--m", "1", "--x", "1", "--y", "pi")
    assert got == 2 and json.loads(out)["error"] == "irrational_input"


def test_byte_stable(capsys):
    outs = set()
    for _ in range(3):
        _, out = run(capsys, "enumerate", *K3)
        outs.add(out)
    assert len(outs) == 1


def test_console_script_stdin():
    cmd = [sys.executable, "-m", "lagfib.cli", "cohomology", "--input", "-"]
    rec = json.dumps({"series": "T2nyx", "params": {"n": 3, "y": "1", "x": "1"}})
    res = subprocess.run(cmd, input=rec, capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["structure"] == "Z + Z3"
