import io
import json
import subprocess
import sys

import jsonschema
import pytest

from orthoinv.cli import load_schema, run


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(argv, stdin=""):
    code, out, err = call(argv + ["--json"], stdin)
    data = json.loads(out)
    jsonschema.validate(data, load_schema(argv[0]))
    assert data["exit_code"] == code and data["command"] == argv[0]
    return code, data


def test_gen_q():
    code, out, _ = call(["gen", "Q:1", "--n", "2"])
    assert code == 0 and out == "x1_1*y1_1\n"


def test_check_feven_symbolic():
    code, data = call_json(["check", "FEVEN:nu=2,t=2", "--group", "O4", "--mode", "symbolic"])
    assert code == 0 and data["certificate"]["status"] == "pass"


def test_relations_n3_text():
    code, out, _ = call(["relations", "--n", "3"])
    assert code == 0
    assert out.splitlines()[0] == "G-relation: 0 (verified over Int and GF(2))"


@pytest.mark.parametrize("argv", [
    ["gen", "BIJ:1,2|3,4"],
    ["gen", "TR:1,2,3"],
    ["check", "B:1,2", "--n", "4"],
    ["check", "DELTA:nu=2", "--group", "O4"],
    ["check", "D", "--n", "5", "--mode", "randomized"],
    ["space", "--group", "O2", "--alpha", "1,1,1,1"],
    ["decompose", "BIJ:1,2|3,4"],
    ["decompose", "BIJ:1,2|1,3"],
    ["relations", "--n", "4"],
    ["relations", "--n", "5"],
    ["rewrite", "TR:1,2"],
    ["realize", "--n", "4", "--m", "3", "--random", "--seed", "5"],
    ["orbit", "--n", "4", "--m", "2", "--random", "--group", "SO"],
    ["nullcone", "DELTA:nu=2", "--trials", "20"],
    ["jacobian", "--n", "5", "--m", "5"],
])
def test_json_validates_against_schema(argv):
    code, data = call_json(argv)
    assert code in (0, 1)


def test_exit_codes():
    assert call(["check", "--group", "O2"], "x1_1*y1_2")[0] == 1
    assert call(["check", "--group", "O2"], "x1_1*y1_2 + y1_1*x1_2")[0] == 0
    code, _, err = call(["gen", "NOPE:1"])
    assert code == 2 and "NOPE" in err
    assert call(["gen", "Q:1"])[0] == 2  # Q needs --n
    assert call(["check", "Q:1", "--n", "4", "--k", "40"])[0] == 2
    assert call(["space", "--group", "SO6", "--alpha", "1,1", "--mode", "symbolic"])[0] == 2
    assert call(["bogus"])[0] == 2
    assert call(["rewrite", "--n", "3"], "z_1*x1_2*y1_2")[0] == 1
    assert call(["rewrite", "--n", "2"], "x1_1*y1_2")[0] == 1


def test_stdin_polynomial_and_errors():
    code, out, _ = call(["rewrite", "--n", "3"], "x1_1*y1_1 + z_1^2")
    assert code == 0 and out.strip() == "Q_1"
    code, _, err = call(["realize", "--n", "2"], "{not json")
    assert code == 2 and err


def test_decompose_reports_both_verdicts():
    code, data = call_json(["decompose", "BIJ:1,2|3,4"])
    assert code == 0 and data["decomposition"]["decomposable"] is False
    code, data = call_json(["decompose", "BIJ:1,2|1,3"])
    assert data["decomposition"]["certificate"] == [["x1_1*y1_1", "x1_2*y1_3 + y1_2*x1_3"]]


def test_realize_and_orbit_from_files(tmp_path):
    g = {"m": 2, "beta": [[0, 1], [1, 0]], "q": [0, 0], "field": {"k": 1}}
    p = tmp_path / "g.json"
    p.write_text(json.dumps(g))
    code, data = call_json(["realize", "--n", "2", "--input", str(p)])
    assert code == 0 and data["vectors"]["columns"] == [[1, 0], [0, 1]]
    pair = {"v1": data["vectors"], "v2": {"n": 2, "m": 2, "field": {"k": 1}, "columns": [[0, 1], [1, 0]]}}
    code, data = call_json(["orbit"], json.dumps(pair))
    assert data["verdict"] == "same"
    code, data = call_json(["orbit", "--group", "SO"], json.dumps(pair))
    assert data["verdict"] == "different"


def test_nullcone_membership():
    v = {"n": 4, "m": 2, "field": {"k": 4}, "columns": [[1, 3, 0, 0], [5, 0, 0, 0]]}
    code, data = call_json(["nullcone"], json.dumps(v))
    assert code == 0 and data["member"] is True


def test_determinism():
    argv = ["realize", "--n", "6", "--m", "4", "--random", "--seed", "17", "--json"]
    assert call(argv)[1] == call(argv)[1]
    argv = ["check", "D", "--n", "5", "--mode", "randomized", "--seed", "3", "--json"]
    assert call(argv)[1] == call(argv)[1]


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "orthoinv.cli", "gen", "Q:1", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "x1_1*y1_1\n"
