import json
import subprocess
import sys

import pytest

from clusteraut.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mutate_json(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A2", "--k", "1")
    assert code == 0
    data = json.loads(out)
    assert data["variables"] == ["(1 + x2) / x1", "x2"]


def test_mutate_twice_is_identity(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "B3", "--k", "2,2", "--out", "text")
    assert code == 0
    assert out.split() == ["0", "1", "0", "-1", "0", "-1", "0", "2", "0"]


def test_mutate_dot(capsys):
    code, out, _ = run(capsys, "mutate", "--type", "A3", "--k", "2", "--out", "dot")
    assert code == 0 and out.startswith("digraph")


def test_matrix_from_file(tmp_path, capsys):
    path = tmp_path / "b.txt"
    path.write_text("0 1\n-1 0\n---\n1 0\n")
    code, out, _ = run(capsys, "mutate", "--matrix", str(path), "--k", "1")
    assert code == 0
    assert json.loads(out)["variables"][0] == "(x2 + y1) / x1"


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", "--type", "B3")
    data = json.loads(out)
    assert code == 0 and len(data["seeds"]) == 20 and len(data["edges"]) == 30


def test_graph_dot_highlights_belt(capsys):
    code, out, _ = run(capsys, "graph", "--type", "A3", "--out", "dot")
    assert code == 0
    assert out.count("filled") == 6


def test_belt(capsys):
    code, out, _ = run(capsys, "belt", "--type", "A3")
    assert code == 0 and json.loads(out)["distinct_seeds"] == 6


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "--type", "A2", "--out", "text")
    assert code == 0
    assert out.splitlines() == ["type A2, h = 3", "-alpha1", "-alpha2", "alpha1", "alpha2", "alpha1 + alpha2"]


def test_tau_group(capsys):
    code, out, _ = run(capsys, "tau-group", "--type", "G2")
    assert code == 0
    assert json.loads(out) == {"order": 8, "rotation_order": 4, "structure": "D4"}


@pytest.mark.parametrize("label,order,name", [("A3", 12, "D6"), ("D4", 48, "D4 x S3"), ("G2", 8, "D4")])
def test_aut_group(capsys, label, order, name):
    code, out, _ = run(capsys, "aut-group", "--type", label)
    assert code == 0
    data = json.loads(out)
    assert (data["order"], data["structure"]) == (order, name)
    assert "generators" not in data


def test_aut_group_generators(capsys):
    code, out, _ = run(capsys, "aut-group", "--type", "A2", "--generators")
    assert code == 0 and "generators" in json.loads(out)


def test_fold(capsys):
    code, out, _ = run(capsys, "fold", "--type", "A3")
    assert code == 0
    data = json.loads(out)
    assert data["folded_type"] == "B2" and data["projection"]["invariant_seeds"] == 6


def test_universal(capsys):
    code, out, _ = run(capsys, "universal", "--type", "A2", "--out", "text")
    assert code == 0 and out.count("coroot:") == 5


def test_bad_label_exit_code(capsys):
    code, _, err = run(capsys, "graph", "--type", "Q7")
    assert code == 2 and "error" in err


def test_missing_source(capsys):
    assert run(capsys, "graph")[0] == 2
    assert run(capsys, "graph", "--type", "A2", "--matrix", "x")[0] == 2


def test_bad_direction(capsys):
    assert run(capsys, "mutate", "--type", "A2", "--k", "3")[0] == 2
    assert run(capsys, "mutate", "--type", "A2")[0] == 2


def test_unknown_verb(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_malformed_matrix(tmp_path, capsys):
    path = tmp_path / "b.txt"
    path.write_text("0 1\n1 0\n")
    assert run(capsys, "graph", "--matrix", str(path))[0] == 2


def test_cap_exit_code(tmp_path, capsys):
    path = tmp_path / "b.txt"
    path.write_text("0 2\n-2 0\n")
    code, _, err = run(capsys, "graph", "--matrix", str(path), "--cap", "50")
    assert code == 3 and "cap" in err


def test_infinite_type_roots(tmp_path, capsys):
    path = tmp_path / "b.txt"
    path.write_text("0 2\n-2 0\n")
    assert run(capsys, "roots", "--matrix", str(path))[0] == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, "graph", "--type", "C3")[1]
    second = run(capsys, "graph", "--type", "C3")[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "clusteraut", "tau-group", "--type", "A2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 10


@pytest.mark.slow
def test_check_verb(capsys):
    code, out, _ = run(capsys, "check", "--slow")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 9 and all(line.startswith("[PASS]") for line in lines)
