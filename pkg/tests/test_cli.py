import json
import subprocess
import sys

import pytest

from dilation_ktheory import IntMatrix, ParseError, invariant_factors
from dilation_ktheory.cli import RunConfig, main, parse_input, run_report


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_json_object():
    assert parse_input('{"matrix": [[2,0],[0,2]]}') == 2 * IntMatrix.identity(2)


def test_parse_bare_json_and_string_entries():
    big = "123456789012345678901234567890"
    assert parse_input(f'[["{big}"]]') == IntMatrix.from_rows([[int(big)]])


def test_parse_text():
    assert parse_input("2\n0 1\n2 0") == IntMatrix.from_rows([[0, 1], [2, 0]])
    assert parse_input("# comment\n1\n  -3  # trailing\n") == IntMatrix.from_rows([[-3]])


@pytest.mark.parametrize("text", [
    '{"matrix": [[1, 2], [3]]}',
    '{"matrix": [[1, 2]]}',
    '{"matrix": [[1.5]]}',
    '{"matrix": [[true]]}',
    '{"rows": [[1]]}',
    '{"matrix": []}',
    "[[1, 2",
    "2\n1 2\n3",
    "2\n1 2",
    "2 2\n1 2\n3 4",
    "1\nx",
    "",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_input(text)


def test_run_config_needs_one_source():
    with pytest.raises(ValueError):
        RunConfig()
    with pytest.raises(ValueError):
        RunConfig(source="-", inline="[[2]]")


def test_compute_json_for_scalar_two(capsys):
    code, out, _ = run(["compute", "--matrix", "[[2,0],[0,2]]", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["k0"] == {"rank": 1, "torsion": ["3"]}
    assert data["k1"] == {"rank": 1, "torsion": []}
    assert data["det"] == "4" and data["det_sign"] == 1
    assert data["is_dilation"] is True and data["rejection_reason"] is None
    assert data["cross_check"] == {"performed": True, "passed": True}
    assert [e["n"] for e in data["per_degree"]] == [0, 1, 2]
    assert all("matrix" not in e for e in data["per_degree"])


def test_compute_text(capsys):
    code, out, _ = run(["compute", "--matrix", "[[2,0],[0,2]]"], capsys)
    assert code == 0
    assert "K0 = Z (+) Z/3" in out
    assert "K1 = Z\n" in out
    assert "cross-check against the B_n form: passed" in out


def test_no_cross_check(capsys):
    code, out, _ = run(["compute", "--matrix", "[[2]]", "--format", "json",
                        "--no-cross-check"], capsys)
    assert code == 0
    assert json.loads(out)["cross_check"] == {"performed": False, "passed": None}


def test_rejection_exit_code(capsys):
    code, out, _ = run(["compute", "--matrix", "[[2,1],[1,1]]", "--format", "json"], capsys)
    assert code == 2
    data = json.loads(out)
    assert data["is_dilation"] is False
    assert data["rejection_reason"] == "eigenvalue on unit circle or reciprocal pair"
    assert data["k0"] is None


def test_check_command(capsys):
    assert run(["check", "--matrix", "[[0,1],[2,0]]"], capsys)[0] == 0
    code, out, _ = run(["check", "--matrix", "[[1,2],[2,4]]"], capsys)
    assert code == 2 and "singular" in out


def test_size_guard(capsys):
    rows = [[2 if i == j else 0 for j in range(30)] for i in range(30)]
    code, out, err = run(["compute", "--matrix", json.dumps(rows)], capsys)
    assert code == 4 and out == "" and "cap" in err
    code, _, _ = run(["compute", "--matrix", "[[2,0],[0,2]]", "--max-size", "1"], capsys)
    assert code == 4


def test_parse_error_exit_code(capsys):
    code, out, err = run(["compute", "--matrix", "[[1,2],[3]]"], capsys)
    assert code == 3 and out == "" and "parse error" in err


def test_missing_file_is_a_parse_error(tmp_path, capsys):
    assert run(["compute", str(tmp_path / "nope.json")], capsys)[0] == 3


def test_usage_error_exit_code(capsys):
    assert run(["compute", "--format", "xml", "--matrix", "[[2]]"], capsys)[0] == 3
    assert run(["compute"], capsys)[0] == 3
    assert run(["compute", "-", "--matrix", "[[2]]"], capsys)[0] == 3
    assert run(["frobnicate"], capsys)[0] == 3
    assert run(["--help"], capsys)[0] == 0


def test_file_input(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("2\n0 1\n2 0\n")
    code, out, _ = run(["compute", str(f), "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["k0"] == {"rank": 0, "torsion": ["2"]}
    assert data["k1"] == {"rank": 0, "torsion": []}


def test_emitted_matrices_round_trip(capsys):
    rows = [[3, 1, 0], [1, 2, 1], [0, -1, 3]]
    code, out, _ = run(["compute", "--matrix", json.dumps(rows), "--format", "json",
                        "--emit-matrices"], capsys)
    assert code == 0
    for entry in json.loads(out)["per_degree"]:
        m = IntMatrix.from_rows([[int(x) for x in r] for r in entry["matrix"]])
        assert m.rows == entry["size"]
        assert [str(x) for x in invariant_factors(m)] == entry["invariant_factors"]


def test_output_is_deterministic(capsys):
    argv = ["compute", "--matrix", "[[3,1,0],[1,2,1],[0,-1,3]]", "--format", "json",
            "--emit-matrices"]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first == second


def test_run_report_directly():
    text, code = run_report(RunConfig(inline="[[-2]]", fmt="json"))
    data = json.loads(text)
    assert code == 0
    assert data["k0"] == {"rank": 0, "torsion": []}
    assert data["k1"] == {"rank": 0, "torsion": ["2"]}


def test_module_entry_point_reads_stdin():
    proc = subprocess.run([sys.executable, "-m", "dilation_ktheory", "compute", "-",
                           "--format", "json"],
                          input='{"matrix": [[1,1],[-1,1]]}', capture_output=True, text=True)
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["k0"] == {"rank": 1, "torsion": []}
    assert data["k1"] == {"rank": 1, "torsion": []}
