"""Command line: ``racdraw draw | verify | gen``.

Exit codes: 0 ok, 1 verification failed, 2 input error, 3 precondition error.
"""

from __future__ import annotations

import argparse
import sys
from math import ceil
from pathlib import Path

from .decompose import three_edge_color
from .drawing import MalformedDrawing
from .graph import GraphError, ImproperColoring
from .io import BadSpec, GraphInput, ParseError, emit_json, emit_svg, format_graph, generate, parse_graph, parse_json
from .oddness import draw_oddness2, draw_oddness_k
from .onebend_diagonal import draw_1bend_diagonal
from .onebend_split import draw_1bend_deg4
from .rac3 import rac3_constraints, rac3_layout
from .twobend import draw_2bend_deg7
from .verify import Constraints, verify

OK, FAILED, INPUT_ERROR, PRECONDITION = 0, 1, 2, 3
MODES = ("rac3", "oddness2", "oddnessk", "deg4", "deg4diag", "deg7")


class _InputError(Exception):
    pass


def _read_graph(arg: str, seed: int) -> GraphInput:
    path = Path(arg)
    if path.exists():
        try:
            return parse_graph(path.read_text(encoding="utf-8"))
        except (ParseError, ImproperColoring, GraphError) as exc:
            raise _InputError(f"{arg}: {exc}") from exc
    try:
        return generate(arg, seed)
    except BadSpec as exc:
        raise _InputError(f"{arg}: neither a file nor a graph spec ({exc})") from exc


def _draw(mode: str, gi: GraphInput):
    """Returns (drawing, constraints, edge classes for styling)."""
    g = gi.graph
    if mode == "rac3":
        col = gi.coloring or three_edge_color(g)
        if col is None:
            raise GraphError("graph is not 3-edge-colorable")
        res = rac3_layout(g, col)
        return res.drawing, rac3_constraints(g, col, res), dict(enumerate(col.classes))
    if mode == "oddness2":
        return draw_oddness2(g), Constraints(max_bends=0), None
    if mode == "oddnessk":
        return draw_oddness_k(g), Constraints(max_bends=1), None
    if mode == "deg4":
        return draw_1bend_deg4(g), Constraints(max_bends=1), None
    if mode == "deg4diag":
        return draw_1bend_diagonal(g), Constraints(max_bends=1, min_straight=ceil(len(g.real_edges()) / 8)), None
    matching = gi.matching
    if matching is None and gi.coloring is not None and gi.coloring.k >= 7:
        matching = gi.coloring.matching(gi.coloring.k - 1)
    return draw_2bend_deg7(g, matching), Constraints(max_bends=2), None


def cmd_draw(args) -> int:
    gi = _read_graph(args.input, args.seed)
    try:
        d, cons, classes = _draw(args.mode, gi)
    except GraphError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return PRECONDITION
    rep = verify(gi.graph, d, cons)
    Path(args.out).write_text(emit_json(d, rep), encoding="utf-8")
    if args.svg:
        Path(args.svg).write_text(emit_svg(d, classes), encoding="utf-8")
    _summary(rep)
    return OK if rep.ok else FAILED


def cmd_verify(args) -> int:
    gi = _read_graph(args.input, 0)
    try:
        d = parse_json(Path(args.drawing).read_text(encoding="utf-8"))
        rep = verify(gi.graph, d, Constraints(max_bends=args.max_bends))
    except (OSError, MalformedDrawing) as exc:
        raise _InputError(str(exc)) from exc
    _summary(rep)
    return OK if rep.ok else FAILED


def cmd_gen(args) -> int:
    gi = _read_graph(args.spec, args.seed)
    text = format_graph(gi.graph, gi.coloring, gi.matching)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def _summary(rep) -> None:
    bad = [c for c in rep.crossings if not c.perpendicular]
    print(
        f"rac_ok={rep.rac_ok} ok={rep.ok} crossings={len(rep.crossings)} non_perpendicular={len(bad)} "
        f"degeneracies={len(rep.overlaps)} bends={dict(sorted(rep.bend_histogram.items()))} "
        f"straight={rep.straight_edge_count} box={rep.bounding_box[0]}x{rep.bounding_box[1]}"
    )
    for v in rep.violations:
        print(f"violation: {v}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="racdraw", description="RAC drawings of low-degree graphs")
    sub = p.add_subparsers(dest="command", required=True)
    d = sub.add_parser("draw", help="draw a graph and verify the result")
    d.add_argument("--mode", choices=MODES, required=True)
    d.add_argument("--in", dest="input", required=True, help="graph file or generator spec such as reg4(20)")
    d.add_argument("--out", required=True, help="drawing JSON")
    d.add_argument("--svg")
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_draw)
    v = sub.add_parser("verify", help="check a drawing against a graph")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--drawing", required=True)
    v.add_argument("--max-bends", type=int)
    v.set_defaults(func=cmd_verify)
    g = sub.add_parser("gen", help="write a generated graph in the text format")
    g.add_argument("--spec", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
