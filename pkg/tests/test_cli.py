import json

import pytest

from loopcrystal import cli
from loopcrystal.errors import TheoryViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims_loop2(capsys):
    code, out, _ = run(capsys, "dims", "--quiver", "loop2", "--bound", "4", "--out", "json")
    assert code == 0
    rows = json.loads(out)
    assert [r["dim"] for r in rows] == [1, 1, 2, 4, 8]
    assert all(r["match"] for r in rows)


def test_dims_jordan_table(capsys):
    code, out, _ = run(capsys, "dims", "--quiver", "jordan", "--bound", "4")
    assert code == 0
    lines = out.splitlines()[1:]
    assert [int(l.split()[-1]) for l in lines] == [1, 1, 2, 3, 5]
    assert "MISMATCH" not in out


def test_crystal_bound_zero(capsys):
    code, out, _ = run(capsys, "crystal", "--quiver", "a2", "--bound", "0")
    assert code == 0
    data = json.loads(out)
    assert len(data["nodes"]) == 1 and data["edges"] == []
    assert data["source"] == 0


def test_jordan_bound_two_nodes(capsys):
    _, out, _ = run(capsys, "crystal", "--quiver", "jordan", "--bound", "2")
    data = json.loads(out)
    assert sorted(n["eps"]["a"] for n in data["nodes"]) == [[], [1], [1, 1], [2]]
    assert all(n["wt"] == [0] for n in data["nodes"])


def test_sl2_highest_weight_chain(capsys):
    _, out, _ = run(capsys, "crystal", "--quiver", "sl2", "--kind", "highest", "--lam", "2", "--bound", "5")
    data = json.loads(out)
    assert [n["wt"] for n in data["nodes"]] == [[2], [0], [-2]]
    assert [(e["from"], e["to"]) for e in data["edges"]] == [(0, 1), (1, 2)]


@pytest.mark.parametrize("fmt", ["json", "dot", "table"])
def test_output_is_deterministic(capsys, fmt):
    args = ("crystal", "--quiver", "a1loop", "--bound", "3", "--out", fmt)
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and a


def test_dot_edges(capsys):
    _, out, _ = run(capsys, "crystal", "--quiver", "loop2", "--bound", "2", "--out", "dot")
    assert out.startswith("digraph crystal {")
    assert 'label="f[a,2]"' in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "c.json"
    code, out, _ = run(capsys, "crystal", "--quiver", "sl2", "--bound", "2", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["quiver"] == "sl2"


def test_verify_none_succeeds(capsys):
    code, out, _ = run(capsys, "verify", "--quiver", "sl2", "--suite", "none")
    assert code == 0
    assert "summary" in out


def test_verify_corrupted_parameter_fails_hypo(capsys):
    code, out, _ = run(capsys, "verify", "--quiver", "loop2", "--bound", "3",
                       "--suite", "hypo", "--param", "0,1=v")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ("crystal", "--quiver", "nope"),
    ("crystal", "--quiver", "a2", "--kind", "highest", "--lam", "1,-1"),
    ("crystal", "--quiver", "a2", "--kind", "highest"),
    ("crystal", "--quiver", "a2", "--kind", "highest", "--lam", "1"),
    ("verify", "--suite", "bogus"),
    ("dims", "--param", "0,1=0"),
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["dims", "--bound", "-1"])
    assert exc.value.code == 2


def test_theory_violation_exit_three(capsys, monkeypatch):
    def boom(*a, **k):
        raise TheoryViolation("lattice is not a crystal lattice")
    monkeypatch.setattr(cli, "crystal_binf", boom)
    code, _, err = run(capsys, "dims", "--quiver", "jordan")
    assert code == 3
    assert "theory violation" in err


def test_quiver_file(tmp_path, capsys):
    p = tmp_path / "mine.quiver"
    p.write_text("vertex x loops=0\nvertex y loops=0\nedge x y mult=1\n")
    code, out, _ = run(capsys, "dims", "--quiver", str(p), "--bound", "2", "--out", "json")
    assert code == 0
    assert [r["dim"] for r in json.loads(out)] == [1, 1, 1, 1, 2, 1]
