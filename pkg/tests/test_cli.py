import json

import pytest

from racdraw.cli import main
from racdraw.io import format_graph, generate


@pytest.mark.parametrize(
    "mode,spec",
    [
        ("rac3", "cubic3col(20)"),
        ("oddness2", "petersen"),
        ("oddnessk", "petersens(2)"),
        ("deg4", "reg4(15)"),
        ("deg4diag", "K5"),
        ("deg7", "K8"),
    ],
)
def test_draw_modes(tmp_path, mode, spec):
    out, svg = tmp_path / "d.json", tmp_path / "d.svg"
    assert main(["draw", "--mode", mode, "--in", spec, "--out", str(out), "--svg", str(svg)]) == 0
    doc = json.loads(out.read_text())
    assert doc["report"]["rac_ok"] and svg.read_text().startswith("<svg")


def test_draw_from_file_and_verify(tmp_path):
    src = tmp_path / "g.graph"
    assert main(["gen", "--spec", "reg7col(12)", "--seed", "3", "--out", str(src)]) == 0
    out = tmp_path / "d.json"
    assert main(["draw", "--mode", "deg7", "--in", str(src), "--out", str(out)]) == 0
    assert main(["verify", "--in", str(src), "--drawing", str(out), "--max-bends", "2"]) == 0
    assert main(["verify", "--in", str(src), "--drawing", str(out), "--max-bends", "1"]) == 1


def test_verify_rejects_a_bad_drawing(tmp_path):
    src = tmp_path / "g.graph"
    src.write_text("n 4\ne 0 1\ne 2 3\n")
    bad = tmp_path / "bad.json"
    doc = {
        "format": 1,
        "scale": 1,
        "vertices": [{"id": v, "x": x, "y": y} for v, (x, y) in enumerate([(0, 0), (2, 1), (0, 1), (2, 0)])],
        "edges": [{"id": 0, "u": 0, "v": 1, "bends": []}, {"id": 1, "u": 2, "v": 3, "bends": []}],
    }
    bad.write_text(json.dumps(doc))
    assert main(["verify", "--in", str(src), "--drawing", str(bad)]) == 1


def test_gen_is_byte_reproducible(tmp_path, capsys):
    main(["gen", "--spec", "cubic3col(40)", "--seed", "9"])
    first = capsys.readouterr().out
    main(["gen", "--spec", "cubic3col(40)", "--seed", "9"])
    assert capsys.readouterr().out == first
    gi = generate("cubic3col(40)", 9)
    assert first == format_graph(gi.graph, gi.coloring, gi.matching)


def test_exit_codes(tmp_path):
    out = str(tmp_path / "x.json")
    assert main(["draw", "--mode", "rac3", "--in", "no-such-graph", "--out", out]) == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("n 2\ne 0 0\n")
    assert main(["draw", "--mode", "rac3", "--in", str(bad), "--out", out]) == 2
    assert main(["draw", "--mode", "rac3", "--in", "K5", "--out", out]) == 3
    assert main(["draw", "--mode", "oddness2", "--in", "K4", "--out", out]) == 3
    assert main(["draw", "--mode", "deg4", "--in", "K8", "--out", out]) == 3
    with pytest.raises(SystemExit):
        main(["draw", "--mode", "nope", "--in", "K4", "--out", out])
