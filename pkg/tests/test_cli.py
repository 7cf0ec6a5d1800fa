import json
import subprocess
import sys

import pytest

from boxcover.cli import main

RUN = [sys.executable, "-m", "boxcover.cli"]


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


CLUSTER4 = "0 0\n1 1\n# a comment\n\n10 0\n12 2\n"


def test_solve_json(tmp_path, capsys):
    inp = write(tmp_path, "pts.txt", CLUSTER4)
    rc = main(["solve", inp, "--p", "2", "--k", "0", "--shape", "square"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["objective"] == 4.0
    assert doc["p"] == 2 and doc["shape"] == "square"
    assert len(doc["boxes"]) == 2 and doc["outliers"] == []


def test_solve_single_point(tmp_path, capsys):
    inp = write(tmp_path, "one.txt", "3.5 4.5\n")
    rc = main(["solve", inp, "--p", "1", "--k", "0"])
    assert rc == 0
    assert json.loads(capsys.readouterr().out)["objective"] == 0.0


def test_solve_parse_error(tmp_path, capsys):
    inp = write(tmp_path, "bad.txt", "0 0\n1 abc\n")
    rc = main(["solve", inp, "--p", "1", "--k", "0"])
    assert rc == 2
    assert ":2:" in capsys.readouterr().err  # names the line number


def test_solve_bad_flags(tmp_path):
    inp = write(tmp_path, "pts.txt", CLUSTER4)
    assert main(["solve", inp, "--p", "4", "--k", "0"]) == 3
    assert main(["solve", inp, "--p", "1", "--k", "-1"]) == 3
    assert main(["solve", inp, "--p", "1", "--k", "0", "--shape", "circle"]) == 3


def test_gen_diagonal_and_determinism(tmp_path, capsys):
    rc = main(["gen", "diagonal", "1", "2", "2", "5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 4

    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    assert main(["gen", "uniform", "50", "--seed", "9", "--out", str(a)]) == 0
    assert main(["gen", "uniform", "50", "--seed", "9", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 50


def test_gen_unknown_kind():
    assert main(["gen", "spiral", "5"]) == 3


def test_verify_roundtrip(tmp_path, capsys):
    f = tmp_path / "g.txt"
    assert main(["gen", "clusters", "2", "4", "--seed", "3", "--out", str(f)]) == 0
    assert main(["verify", str(f), "--p", "2", "--k", "1", "--shape", "square"]) == 0
    assert main(["verify", str(f), "--p", "2", "--k", "1", "--shape", "rect"]) == 0


def test_verify_size_limit(tmp_path):
    f = tmp_path / "big.txt"
    assert main(["gen", "uniform", "30", "--seed", "1", "--out", str(f)]) == 0
    assert main(["verify", str(f), "--p", "2", "--k", "0"]) == 4


def test_verify_detects_wrong_solver(tmp_path, capsys, monkeypatch):
    # corrupt the fast path: verify must exit 1 and print both objectives
    import boxcover.cli as cli
    from boxcover.core import AxisBox, CoverSolution

    f = tmp_path / "g.txt"
    assert main(["gen", "uniform", "8", "--seed", "2", "--out", str(f)]) == 0

    def broken(S, idx, spec):
        box = AxisBox(0.0, 0.0, 1e9, 1e9, spec.shape)
        n = S.n
        return CoverSolution((box,), box.area, n, frozenset())

    monkeypatch.setattr(cli, "solve_pk", broken)
    assert main(["verify", str(f), "--p", "1", "--k", "2", "--shape", "rect"]) == 1
    assert "mismatch" in capsys.readouterr().out


def test_render_svg(tmp_path, capsys):
    inp = write(tmp_path, "pts.txt", CLUSTER4)
    solpath = tmp_path / "sol.json"
    rc = main(["solve", inp, "--p", "2", "--k", "0", "--out-file", str(solpath)])
    assert rc == 0
    svg1 = tmp_path / "out.svg"
    svg2 = tmp_path / "out2.svg"
    assert main(["render", inp, str(solpath), "--svg", str(svg1)]) == 0
    assert main(["render", inp, str(solpath), "--svg", str(svg2)]) == 0
    body = svg1.read_text()
    assert body.count("<circle") == 4
    assert body.count("<rect") == 2 + 1  # two boxes plus the background
    assert svg1.read_bytes() == svg2.read_bytes()  # byte-identical repeat


def test_render_empty_solution(tmp_path):
    inp = write(tmp_path, "pts.txt", CLUSTER4)
    sol = write(tmp_path, "empty.json", '{"boxes": [], "outliers": [0, 1, 2, 3]}')
    svg = tmp_path / "o.svg"
    assert main(["render", inp, sol, "--svg", str(svg)]) == 0
    body = svg.read_text()
    assert body.count("<circle") == 4
    assert body.count('fill="none" stroke="black"/>') >= 4  # hollow outliers
    assert body.count("<rect") == 1  # background only


def test_render_unreadable(tmp_path):
    assert main(["render", str(tmp_path / "nope.txt"), "x", "--svg", "y"]) == 2


def test_solve_svg_flag(tmp_path, capsys):
    inp = write(tmp_path, "pts.txt", CLUSTER4)
    svg = tmp_path / "direct.svg"
    rc = main(["solve", inp, "--p", "2", "--k", "1", "--svg", str(svg)])
    assert rc == 0
    assert svg.exists()


def test_bench_report(capsys):
    rc = main(["bench", "--p", "1", "--k", "3", "--n", "500", "--seed", "2", "--reps", "2"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 500 and len(doc["solve_s"]) == 2
    assert doc["objective"] > 0


def test_bench_objective_deterministic(capsys):
    main(["bench", "--p", "2", "--k", "2", "--n", "200", "--seed", "5"])
    a = json.loads(capsys.readouterr().out)["objective"]
    main(["bench", "--p", "2", "--k", "2", "--n", "200", "--seed", "5"])
    b = json.loads(capsys.readouterr().out)["objective"]
    assert a == b


def test_console_entry_point(tmp_path):
    # the installed module is runnable as a subprocess too
    r = subprocess.run(
        RUN + ["gen", "uniform", "5", "--seed", "1"], capture_output=True, text=True
    )
    assert r.returncode == 0
    assert len(r.stdout.strip().splitlines()) == 5


def test_text_output(tmp_path, capsys):
    inp = write(tmp_path, "pts.txt", CLUSTER4)
    rc = main(["solve", inp, "--p", "2", "--k", "0", "--out", "text"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("objective 4.0")
    assert out.count("box ") == 2


@pytest.mark.parametrize(
    "gen_args",
    [
        ["uniform", "12"],
        ["clusters", "3", "4"],
        ["clusters", "2", "3", "0.5"],
        ["diagonal", "1", "2", "2", "9"],
        ["shared", "9"],
    ],
)
def test_gen_solve_render_roundtrip(tmp_path, gen_args):
    pts = tmp_path / "pts.txt"
    sol = tmp_path / "sol.json"
    svg = tmp_path / "fig.svg"
    assert main(["gen", *gen_args, "--seed", "4", "--out", str(pts)]) == 0
    assert main(
        ["solve", str(pts), "--p", "2", "--k", "1", "--shape", "rect",
         "--out-file", str(sol)]
    ) == 0
    assert main(["render", str(pts), str(sol), "--svg", str(svg)]) == 0
    assert svg.read_text().count("<circle") == len(pts.read_text().splitlines())
