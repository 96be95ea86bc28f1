"""Text graph format, JSON/SVG drawing output and graph generators."""

from __future__ import annotations

import json
import random
import re
from fractions import Fraction
from typing import NamedTuple
from xml.sax.saxutils import escape

from .drawing import Drawing, MalformedDrawing
from .graph import EdgeColoring, Graph, GraphError, make_coloring
from .verify import VerificationReport

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"line {line}, column {column}: {msg}" if line else msg)
        self.line = line
        self.column = column


class BadSpec(ValueError):
    pass


class GraphInput(NamedTuple):
    graph: Graph
    coloring: EdgeColoring | None
    matching: list[int] | None = None


# ---------------------------------------------------------------- text format


def parse_graph(text: str) -> GraphInput:
    """Parse ``n <count>`` / ``e u v [color]`` / ``m u v`` lines.

    Colors in the file start at 1. ``m`` lines name edges of a matching and
    must refer to edges declared with ``e``. ``#`` starts a comment.
    """
    n = None
    edges: list[tuple[int, int]] = []
    colors: list[int | None] = []
    mlines: list[tuple[int, int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not toks:
            continue
        kind, col = toks[0]

        def ints(expect_min, expect_max):
            if not expect_min <= len(toks) - 1 <= expect_max:
                raise ParseError(f"'{kind}' takes {expect_min}..{expect_max} integers", ln, col)
            out = []
            for t, c in toks[1:]:
                try:
                    out.append(int(t))
                except ValueError:
                    raise ParseError(f"not an integer: {t!r}", ln, c) from None
            return out

        if kind == "n":
            if n is not None:
                raise ParseError("duplicate 'n' header", ln, col)
            (n,) = ints(1, 1)
            if n < 0:
                raise ParseError("negative vertex count", ln, toks[1][1])
            continue
        if n is None:
            raise ParseError("'n' header must come first", ln, col)
        if kind == "e":
            vals = ints(2, 3)
            u, v = vals[0], vals[1]
            for x, (_, c) in zip((u, v), toks[1:3]):
                if not 0 <= x < n:
                    raise ParseError(f"vertex {x} outside [0, {n})", ln, c)
            if u == v:
                raise ParseError(f"self-loop at {u}", ln, toks[1][1])
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"parallel edge {key}", ln, col)
            seen[key] = len(edges)
            edges.append((u, v))
            if len(vals) == 3:
                if vals[2] < 1:
                    raise ParseError("colors start at 1", ln, toks[3][1])
                colors.append(vals[2] - 1)
            else:
                colors.append(None)
        elif kind == "m":
            u, v = ints(2, 2)
            mlines.append((u, v, ln))
        else:
            raise ParseError(f"unknown record {kind!r}", ln, col)
    if n is None:
        raise ParseError("missing 'n' header")
    g = Graph(n, tuple(edges))
    coloring = None
    if any(c is not None for c in colors):
        if any(c is None for c in colors):
            raise ParseError("either every edge or no edge carries a color")
        coloring = make_coloring(g, colors)
    matching = None
    if mlines:
        matching = []
        for u, v, ln in mlines:
            key = (min(u, v), max(u, v))
            if key not in seen:
                raise ParseError(f"matching edge {key} is not an edge", ln, 1)
            matching.append(seen[key])
        ends = [x for e in matching for x in g.edges[e]]
        if len(ends) != len(set(ends)):
            raise ParseError("'m' lines do not form a matching")
    return GraphInput(g, coloring, matching)


def format_graph(g: Graph, coloring: EdgeColoring | None = None, matching=None) -> str:
    lines = [f"n {g.n}"]
    for e, (u, v) in enumerate(g.edges):
        lines.append(f"e {u} {v} {coloring.classes[e] + 1}" if coloring else f"e {u} {v}")
    for e in matching or ():
        u, v = g.edges[e]
        lines.append(f"m {u} {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- JSON


def _num(c):
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise MalformedDrawing(f"non-integral coordinate {c}")
        return int(c)
    return c


def drawing_to_dict(d: Drawing) -> dict:
    return {
        "format": FORMAT_VERSION,
        "scale": d.scale,
        "vertices": [{"id": v, "x": _num(p[0]), "y": _num(p[1])} for v, p in sorted(d.positions.items())],
        "edges": [
            {"id": e, "u": u, "v": v, "bends": [[_num(x), _num(y)] for x, y in d.bends.get(e, [])]}
            for e, (u, v) in sorted(d.edges.items())
        ],
    }


def emit_json(d: Drawing, report: VerificationReport | None = None) -> str:
    doc = drawing_to_dict(d)
    if report is not None:
        doc["report"] = report.to_dict()
    return json.dumps(doc, indent=1, sort_keys=True)


def parse_json(text: str) -> Drawing:
    try:
        doc = json.loads(text)
        if doc.get("format", FORMAT_VERSION) != FORMAT_VERSION:
            raise MalformedDrawing(f"unsupported format {doc['format']}")
        pos = {}
        for rec in doc["vertices"]:
            pos[int(rec["id"])] = (rec["x"], rec["y"])
        edges, bends = {}, {}
        for rec in doc["edges"]:
            e = int(rec["id"])
            edges[e] = (int(rec["u"]), int(rec["v"]))
            if rec.get("bends"):
                bends[e] = [tuple(p) for p in rec["bends"]]
        return Drawing(pos, edges, bends, int(doc.get("scale", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedDrawing):
            raise
        raise MalformedDrawing(f"bad drawing document: {exc}") from exc


# ---------------------------------------------------------------- SVG

CLASS_STYLE = {
    0: 'stroke="#1f4fd1" stroke-dasharray="6 3"',
    1: 'stroke="#c62828"',
    2: 'stroke="#2e7d32" stroke-dasharray="1 3"',
}


def emit_svg(d: Drawing, classes: dict[int, int] | None = None, unit: int = 20, radius: float = 4) -> str:
    """One circle per vertex and one polyline per edge, y axis pointing up."""
    pts = list(d.points()) or [(0, 0)]
    minx = min(p[0] for p in pts)
    maxx = max(p[0] for p in pts)
    miny = min(p[1] for p in pts)
    maxy = max(p[1] for p in pts)
    k = Fraction(unit, d.scale)
    pad = 2 * unit

    def tx(p):
        return float((p[0] - minx) * k + pad), float((maxy - p[1]) * k + pad)

    w = float((maxx - minx) * k + 2 * pad)
    h = float((maxy - miny) * k + 2 * pad)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:g}" height="{h:g}" viewBox="0 0 {w:g} {h:g}">',
        '<g fill="none" stroke="#444" stroke-width="1.5">',
    ]
    for e in sorted(d.edges):
        style = CLASS_STYLE.get(classes.get(e), "") if classes else ""
        coords = " ".join(f"{x:g},{y:g}" for x, y in map(tx, d.polyline(e)))
        out.append(f'<polyline data-edge="{e}" points="{coords}" {style}/>'.replace(" />", "/>"))
    out.append("</g>")
    out.append('<g fill="#111">')
    for v in sorted(d.positions):
        x, y = tx(d.positions[v])
        out.append(f'<circle data-vertex="{v}" cx="{x:g}" cy="{y:g}" r="{radius:g}"><title>{escape(str(v))}</title></circle>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- generators


def _edges_from_matchings(n: int, matchings: list[list[tuple[int, int]]]) -> GraphInput:
    edges, classes = [], []
    for c, mt in enumerate(matchings):
        for u, v in mt:
            edges.append((min(u, v), max(u, v)))
            classes.append(c)
    g = Graph(n, tuple(edges))
    return GraphInput(g, make_coloring(g, classes, len(matchings)))


def _random_pairing(rng: random.Random, n: int) -> list[tuple[int, int]]:
    perm = list(range(n))
    rng.shuffle(perm)
    return [(perm[i], perm[i + 1]) for i in range(0, n, 2)]


def _key(u, v):
    return (u, v) if u < v else (v, u)


def cubic3col(n: int, seed: int = 0) -> GraphInput:
    """Union of three random perfect matchings; a matching hitting an earlier edge is redrawn."""
    if n < 4 or n % 2:
        raise BadSpec("cubic3col needs an even n >= 4")
    rng = random.Random(seed)
    used: set[tuple[int, int]] = set()
    ms = []
    for _ in range(3):
        while True:
            mt = _random_pairing(rng, n)
            keys = [_key(u, v) for u, v in mt]
            if used.isdisjoint(keys):
                break
        used.update(keys)
        ms.append(mt)
    return _edges_from_matchings(n, ms)


def reg4(n: int, seed: int = 0) -> GraphInput:
    """Union of two random Hamiltonian cycles with no common edge."""
    if n < 5:
        raise BadSpec("reg4 needs n >= 5")
    rng = random.Random(seed)
    while True:
        edges = set()
        ok = True
        for _ in range(2):
            perm = list(range(n))
            rng.shuffle(perm)
            for i in range(n):
                k = _key(perm[i], perm[(i + 1) % n])
                if k in edges:
                    ok = False
                edges.add(k)
        if ok:
            return GraphInput(Graph(n, tuple(sorted(edges))), None)


def _random_matching_in(rng: random.Random, n: int, allowed: list[list[int]], budget: int) -> list[tuple[int, int]] | None:
    """Random perfect matching inside ``allowed`` by shuffled backtracking."""
    mate = [-1] * n
    steps = [0]
    order = [rng.sample(a, len(a)) for a in allowed]

    def rec() -> bool:
        steps[0] += 1
        if steps[0] > budget:
            return False
        u = next((x for x in range(n) if mate[x] < 0), -1)
        if u < 0:
            return True
        for w in order[u]:
            if mate[w] < 0:
                mate[u], mate[w] = w, u
                if rec():
                    return True
                mate[u] = mate[w] = -1
        return False

    if not rec():
        return None
    return [(u, mate[u]) for u in range(n) if u < mate[u]]


def reg7col(n: int, seed: int = 0, budget: int = 20000) -> GraphInput:
    """Seven disjoint random perfect matchings, each drawn from the remaining complement."""
    if n < 8 or n % 2:
        raise BadSpec("reg7col needs an even n >= 8")
    rng = random.Random(seed)
    while True:
        used: set[tuple[int, int]] = set()
        ms = []
        for _ in range(7):
            allowed = [[w for w in range(n) if w != u and _key(u, w) not in used] for u in range(n)]
            mt = _random_matching_in(rng, n, allowed, budget)
            if mt is None:
                break
            used.update(_key(u, v) for u, v in mt)
            ms.append(mt)
        if len(ms) == 7:
            return _edges_from_matchings(n, ms)


def complete_graph(n: int) -> GraphInput:
    """K_n; for even n the round-robin 1-factorization is attached."""
    if n % 2:
        edges = tuple((u, v) for u in range(n) for v in range(u + 1, n))
        return GraphInput(Graph(n, edges), None)
    ms = []
    m = n - 1
    for r in range(m):
        mt = [(r, n - 1)]
        for i in range(1, n // 2):
            mt.append(((r + i) % m, (r - i) % m))
        ms.append(mt)
    return _edges_from_matchings(n, ms)


def hypercube(d: int) -> GraphInput:
    n = 1 << d
    ms = [[(v, v | (1 << b)) for v in range(n) if not v >> b & 1] for b in range(d)]
    return _edges_from_matchings(n, ms)


def complete_bipartite(k: int) -> GraphInput:
    ms = [[(i, k + (i + c) % k) for i in range(k)] for c in range(k)]
    return _edges_from_matchings(2 * k, ms)


PETERSEN_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
)  # fmt: skip


def petersen() -> GraphInput:
    return GraphInput(Graph(10, PETERSEN_EDGES), None)


def tietze() -> GraphInput:
    """Petersen graph with vertex 0 blown up into a triangle {0, 10, 11}."""
    edges = [e for e in PETERSEN_EDGES if 0 not in e]
    edges += [(0, 1), (10, 4), (11, 5), (0, 10), (10, 11), (0, 11)]
    return GraphInput(Graph(12, tuple(edges)), None)


def prism(k: int = 3) -> GraphInput:
    """Circular ladder on 2k vertices, with a 3-edge-coloring when k is even or k == 3."""
    edges = [(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    g = Graph(2 * k, tuple(edges))
    if k % 2 == 0:
        classes = [i % 2 for i in range(k)] * 2 + [2] * k
    else:
        # both rims: colors 0,1 alternating with one 2; rungs fill in
        rim = [i % 2 for i in range(k - 1)] + [2]
        classes = rim + rim
        classes += [({0, 1, 2} - {rim[i], rim[(i - 1) % k]}).pop() for i in range(k)]
    return GraphInput(g, make_coloring(g, classes, 3))


def disjoint_union(parts: list[Graph]) -> Graph:
    edges, off = [], 0
    for p in parts:
        edges += [(u + off, v + off) for u, v in p.edges]
        off += p.n
    return Graph(off, tuple(edges))


def petersen_chain(k: int) -> GraphInput:
    """``k`` copies of Petersen minus an edge, linked in a ring; bridgeless cubic of oddness 2."""
    if k < 2:
        raise BadSpec("petersen_chain needs k >= 2")
    base = [e for e in PETERSEN_EDGES if e != (0, 1)]
    edges = []
    for i in range(k):
        edges += [(u + 10 * i, v + 10 * i) for u, v in base]
    for i in range(k):
        j = (i + 1) % k
        edges.append((10 * i + 1, 10 * j))
    return GraphInput(Graph(10 * k, tuple(edges)), None)


def petersen_join(n: int, seed: int = 0) -> GraphInput:
    """Random cubic3col(n) and Petersen minus an edge, glued along a 2-edge cut."""
    base = cubic3col(n, seed).graph
    rng = random.Random(seed)
    cut = rng.randrange(base.m)
    a, b = base.edges[cut]
    edges = [e for i, e in enumerate(base.edges) if i != cut]
    edges += [(x + n, y + n) for x, y in PETERSEN_EDGES if (x, y) != (0, 1)]
    edges += [(a, n), (b, n + 1)]
    return GraphInput(Graph(n + 10, tuple(edges)), None)


NAMED = {
    "K4": lambda: complete_graph(4),
    "K5": lambda: complete_graph(5),
    "K8": lambda: complete_graph(8),
    "Q3": lambda: hypercube(3),
    "Q5": lambda: hypercube(5),
    "K5_5": lambda: complete_bipartite(5),
    "petersen": petersen,
    "prism": prism,
    "tietze": tietze,
}

PARAM = {
    "cubic3col": cubic3col,
    "reg4": reg4,
    "reg7col": reg7col,
    "petersens": None,
    "petersen_join": petersen_join,
    "petersen_chain": None,
    "prism": None,
}


def generate(spec: str, seed: int = 0) -> GraphInput:
    """Named graph (``K8``, ``petersen``...) or parametric family (``cubic3col(50)``)."""
    spec = spec.strip()
    if spec in NAMED:
        return NAMED[spec]()
    m = re.fullmatch(r"(\w+)\((\d+)\)", spec)
    if not m or m.group(1) not in PARAM:
        raise BadSpec(f"unknown graph spec {spec!r}")
    name, k = m.group(1), int(m.group(2))
    try:
        if name == "petersens":
            return GraphInput(disjoint_union([petersen().graph] * k), None)
        if name == "petersen_chain":
            return petersen_chain(k)
        if name == "prism":
            return prism(k)
        return PARAM[name](k, seed)
    except GraphError as exc:
        raise BadSpec(str(exc)) from exc
