import json

import pytest

from erglab.cli import main
from erglab.dynamics import rotation_system
from erglab.io import load_system, parse_rational, system_to_document
from erglab.errors import ParseError

Z2Z3 = {"name": "Z2xZ3", "points": 6, "t1": [3, 4, 5, 0, 1, 2], "t2": [1, 2, 0, 4, 5, 3]}


@pytest.fixture
def system_file(tmp_path):
    path = tmp_path / "z2z3.json"
    path.write_text(json.dumps(Z2Z3))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_inspect(capsys, system_file):
    code, out, _ = run(capsys, "inspect", system_file)
    report = json.loads(out)
    assert code == 0
    assert report["result"]["ergodic"] and report["result"]["period"] == 6
    assert report["input_digest"]


def test_seminorm_routes_agree(capsys, system_file):
    code, out, _ = run(capsys, "seminorm", system_file, "--f", "indicator:0")
    report = json.loads(out)
    assert code == 0
    assert report["result"]["seminorm4_box"]["exact"] == "1/36"
    assert report["verdicts"]["routes_agree"]


def test_magic_extend_and_emit(capsys, system_file, tmp_path):
    target = tmp_path / "ext.json"
    code, out, _ = run(capsys, "magic-extend", system_file, "--emit-document", target)
    assert code == 0
    assert all(json.loads(out)["verdicts"].values())
    ext = load_system(target)
    assert len(ext) == json.loads(out)["result"]["extension_points"]


def test_recurrence_csv(capsys, system_file):
    code, out, _ = run(capsys, "recurrence-scan", system_file, "--set", "0,1", "--epsilon", "1/1000", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,I_n,hit"
    assert len(lines) == 7
    assert lines[1] == "0,1/3,1"


def test_csv_rejected_for_other_commands(capsys, system_file):
    code, _, err = run(capsys, "inspect", system_file, "--format", "csv")
    assert code == 2 and "csv" in err


def test_bounds_check(capsys, system_file):
    code, out, _ = run(capsys, "bounds-check", system_file, "--f", "1,0,1/2,0,1,1")
    assert code == 0 and all(json.loads(out)["verdicts"].values())


def test_counterexample(capsys):
    code, out, _ = run(capsys, "counterexample", "--c", "1/2")
    result = json.loads(out)["result"]
    assert code == 0
    assert result["mu_A"]["exact"] == "16/27"
    assert set(result["I_n"].values()) == {"145/729"}
    assert result["l"] == 16


def test_fuzz_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["fuzz", "--suite", "seminorm", "--seed", "7", "--count", "20", "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_unknown_suite(capsys):
    code, _, err = run(capsys, "fuzz", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_bad_rational_is_parse_error(capsys, system_file):
    with pytest.raises(ParseError):
        parse_rational("1/0")
    code, _, err = run(capsys, "recurrence-scan", system_file, "--set", "0", "--epsilon", "1/0")
    assert code == 2 and "epsilon" in err


def test_invalid_system_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"points": 3, "t1": [1, 0, 2], "t2": [0, 2, 1]}))
    code, _, err = run(capsys, "inspect", path)
    assert code == 2 and err


def test_size_guard(capsys, tmp_path, monkeypatch):
    path = tmp_path / "z7.json"
    path.write_text(json.dumps(system_to_document(rotation_system(7, 1, 1))))
    code, _, err = run(capsys, "magic-extend", path, "--max-points", "5")
    assert code == 2 and err
    monkeypatch.setenv("ERGLAB_MAX_POINTS", "5")
    code, _, _ = run(capsys, "seminorm", path, "--f", "indicator:0")
    assert code == 2


def test_document_round_trip(tmp_path):
    s = rotation_system(6, 2, 3)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(system_to_document(s)))
    t = load_system(path)
    assert (t.space, t.t1, t.t2, t.name) == (s.space, s.t1, s.t2, s.name)
