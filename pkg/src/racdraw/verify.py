"""Exact RAC verification.

Everything on the accept/reject path uses Python integers and ``Fraction``;
crossing points are reported as exact rationals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Mapping

from .drawing import Drawing, MalformedDrawing, bounding_box
from .graph import Graph


@dataclass
class Constraints:
    max_bends: int | None = None
    max_width: Any = None
    max_height: Any = None
    horizontal: frozenset[int] = frozenset()
    vertical: frozenset[int] = frozenset()
    crossing_free: frozenset[int] = frozenset()
    min_straight: Any = None


@dataclass
class Crossing:
    e1: int
    e2: int
    point: tuple[Fraction, Fraction]
    perpendicular: bool


@dataclass
class VerificationReport:
    rac_ok: bool
    crossings: list[Crossing] = field(default_factory=list)
    overlaps: list[tuple] = field(default_factory=list)
    bend_histogram: dict[int, int] = field(default_factory=dict)
    straight_edge_count: int = 0
    bounding_box: tuple = (0, 0)
    slope_audit: dict[str, bool] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.rac_ok and not self.violations

    @property
    def max_bends(self) -> int:
        return max(self.bend_histogram, default=0)

    def to_dict(self) -> dict:
        def frac(q):
            q = Fraction(q)
            return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        return {
            "rac_ok": self.rac_ok,
            "ok": self.ok,
            "crossings": [
                {"edges": [c.e1, c.e2], "point": [frac(c.point[0]), frac(c.point[1])], "perpendicular": c.perpendicular}
                for c in self.crossings
            ],
            "overlaps": [[str(x) for x in o] for o in self.overlaps],
            "bend_histogram": {str(k): v for k, v in sorted(self.bend_histogram.items())},
            "straight_edge_count": self.straight_edge_count,
            "bounding_box": [frac(self.bounding_box[0]), frac(self.bounding_box[1])],
            "slope_audit": dict(self.slope_audit),
            "violations": list(self.violations),
        }


def _orient(ax, ay, bx, by, cx, cy):
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def _on_segment_interior(px, py, s) -> bool:
    x1, y1, x2, y2 = s[0], s[1], s[2], s[3]
    if (px, py) == (x1, y1) or (px, py) == (x2, y2):
        return False
    if (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1) != 0:
        return False
    return min(x1, x2) <= px <= max(x1, x2) and min(y1, y2) <= py <= max(y1, y2)


def _intersect(a, b):
    """Return None, ("point", (x, y)) or ("overlap", None) for two closed segments."""
    ax1, ay1, ax2, ay2 = a[0], a[1], a[2], a[3]
    bx1, by1, bx2, by2 = b[0], b[1], b[2], b[3]
    o1 = _orient(ax1, ay1, ax2, ay2, bx1, by1)
    o2 = _orient(ax1, ay1, ax2, ay2, bx2, by2)
    if o1 == 0 and o2 == 0:
        # collinear: intersect parameter intervals along the dominant axis
        if ax1 != ax2:
            lo = max(min(ax1, ax2), min(bx1, bx2))
            hi = min(max(ax1, ax2), max(bx1, bx2))
            if lo > hi:
                return None
            if lo < hi:
                return ("overlap", None)
            t = Fraction(lo - ax1, ax2 - ax1)
            return ("point", (lo, ay1 + t * (ay2 - ay1)))
        lo = max(min(ay1, ay2), min(by1, by2))
        hi = min(max(ay1, ay2), max(by1, by2))
        if lo > hi:
            return None
        if lo < hi:
            return ("overlap", None)
        return ("point", (ax1, lo))
    if o1 == o2:
        return None
    o3 = _orient(bx1, by1, bx2, by2, ax1, ay1)
    o4 = _orient(bx1, by1, bx2, by2, ax2, ay2)
    if o3 == o4 and o3 != 0:
        return None
    dax, day = ax2 - ax1, ay2 - ay1
    dbx, dby = bx2 - bx1, by2 - by1
    den = dax * dby - day * dbx
    num = (bx1 - ax1) * dby - (by1 - ay1) * dbx
    t = Fraction(num, den) if not isinstance(num, Fraction) and not isinstance(den, Fraction) else Fraction(num) / Fraction(den)
    px, py = ax1 + t * dax, ay1 + t * day
    if isinstance(px, Fraction) and px.denominator == 1:
        px = px.numerator
    if isinstance(py, Fraction) and py.denominator == 1:
        py = py.numerator
    return ("point", (px, py))


def _segments(d: Drawing) -> list[tuple]:
    segs = []
    for e in sorted(d.edges):
        u, v = d.edges[e]
        if u not in d.positions or v not in d.positions:
            raise MalformedDrawing(f"edge {e} has an unplaced endpoint")
        pts = d.polyline(e)
        last = len(pts) - 2
        for i in range(len(pts) - 1):
            (x1, y1), (x2, y2) = pts[i], pts[i + 1]
            # (x1, y1, x2, y2, edge, index, start vertex or None, end vertex or None)
            segs.append((x1, y1, x2, y2, e, i, u if i == 0 else None, v if i == last else None))
    return segs


def find_conflicts(d: Drawing) -> tuple[list[Crossing], list[tuple]]:
    """All crossings and degeneracies of a drawing (pure geometry)."""
    crossings: list[Crossing] = []
    degens: list[tuple] = []

    seen_pos: dict = {}
    for v in sorted(d.positions):
        p = tuple(d.positions[v])
        if p in seen_pos:
            degens.append(("vertex-coincide", seen_pos[p], v))
        else:
            seen_pos[p] = v
    bend_at: dict = {}
    for e in sorted(d.bends):
        for p in d.bends[e]:
            p = tuple(p)
            if p in seen_pos:
                degens.append(("bend-on-vertex", e, seen_pos[p]))
            if p in bend_at:
                degens.append(("bend-coincide", bend_at[p], e))
            else:
                bend_at[p] = e

    segs = _segments(d)
    for s in segs:
        if s[0] == s[2] and s[1] == s[3]:
            degens.append(("zero-length", s[4], s[5]))

    # sweep over x; vertices enter as degenerate items
    items = []
    for s in segs:
        items.append((min(s[0], s[2]), max(s[0], s[2]), min(s[1], s[3]), max(s[1], s[3]), s))
    for v, (x, y) in d.positions.items():
        items.append((x, x, y, y, ("V", v, x, y)))
    items.sort(key=lambda it: (it[0], it[1]))

    active: list = []
    for it in items:
        xlo = it[0]
        active = [a for a in active if a[1] >= xlo]
        for a in active:
            if a[3] < it[2] or it[3] < a[2]:
                continue
            _check_pair(a[4], it[4], crossings, degens)
        active.append(it)
    return crossings, degens


def _check_pair(p, q, crossings, degens) -> None:
    pv = p[0] == "V"
    qv = q[0] == "V"
    if pv and qv:
        return
    if pv or qv:
        vert, seg = (p, q) if pv else (q, p)
        _, v, x, y = vert
        if _on_segment_interior(x, y, seg):
            degens.append(("segment-through-vertex", seg[4], v))
        return
    a, b = p, q
    res = _intersect(a, b)
    if res is None:
        return
    kind, pt = res
    if a[4] == b[4]:
        if kind == "overlap":
            degens.append(("self-overlap", a[4], None))
            return
        i, j = sorted((a[5], b[5]))
        lo, hi = (a, b) if a[5] == i else (b, a)
        if j == i + 1 and pt == (lo[2], lo[3]):
            return
        degens.append(("self-intersection", a[4], pt))
        return
    if kind == "overlap":
        degens.append(("collinear-overlap", min(a[4], b[4]), max(a[4], b[4])))
        return
    a_end = pt == (a[0], a[1]) or pt == (a[2], a[3])
    b_end = pt == (b[0], b[1]) or pt == (b[2], b[3])
    if not a_end and not b_end:
        dot = (a[2] - a[0]) * (b[2] - b[0]) + (a[3] - a[1]) * (b[3] - b[1])
        crossings.append(Crossing(min(a[4], b[4]), max(a[4], b[4]), (Fraction(pt[0]), Fraction(pt[1])), dot == 0))
        return
    # touching: allowed only at a vertex shared by both edges, at the vertex end of both segments
    va = _vertex_end(a, pt)
    vb = _vertex_end(b, pt)
    if va is not None and va == vb:
        return
    if va is not None and vb is None and not b_end:
        # vertex point of a lies inside b: reported by the vertex sweep item
        return
    if vb is not None and va is None and not a_end:
        return
    degens.append(("touch", min(a[4], b[4]), max(a[4], b[4])))


def _vertex_end(s, pt):
    if s[6] is not None and pt == (s[0], s[1]):
        return s[6]
    if s[7] is not None and pt == (s[2], s[3]):
        return s[7]
    return None


def verify(g: Graph | None, d: Drawing, constraints: Constraints | None = None) -> VerificationReport:
    """Certify ``d`` as a RAC drawing of ``g`` and audit optional constraints."""
    c = constraints or Constraints()
    violations: list[str] = []
    if g is not None:
        for e in g.real_edges():
            if e not in d.edges:
                raise MalformedDrawing(f"real edge {e} {g.edges[e]} has no polyline")
            a, b = d.edges[e]
            if {a, b} != set(g.edges[e]):
                raise MalformedDrawing(f"edge {e} endpoints differ from the graph")
        for e in d.edges:
            if e in g.fake:
                violations.append(f"fake edge {e} present in drawing")
    for pts in list(d.positions.values()) + [p for b in d.bends.values() for p in b]:
        for coord in pts:
            if isinstance(coord, float):
                raise MalformedDrawing("floating-point coordinate")

    crossings, degens = find_conflicts(d)
    rac_ok = not degens and all(x.perpendicular for x in crossings)

    hist = Counter(d.bend_count(e) for e in d.edges)
    straight = hist.get(0, 0)
    box = bounding_box(d)

    audit: dict[str, bool] = {}
    if c.horizontal:
        audit["horizontal"] = all(_axis(d, e, 1) for e in c.horizontal if e in d.edges)
    if c.vertical:
        audit["vertical"] = all(_axis(d, e, 0) for e in c.vertical if e in d.edges)
    if c.crossing_free:
        audit["crossing_free"] = not any(x.e1 in c.crossing_free or x.e2 in c.crossing_free for x in crossings)
    for k, okk in audit.items():
        if not okk:
            violations.append(f"slope audit failed: {k}")
    if c.max_bends is not None and hist and max(hist) > c.max_bends:
        violations.append(f"an edge has {max(hist)} bends > {c.max_bends}")
    if c.max_width is not None and box[0] > c.max_width:
        violations.append(f"width {box[0]} > {c.max_width}")
    if c.max_height is not None and box[1] > c.max_height:
        violations.append(f"height {box[1]} > {c.max_height}")
    if c.min_straight is not None and straight < c.min_straight:
        violations.append(f"straight edges {straight} < {c.min_straight}")

    return VerificationReport(
        rac_ok=rac_ok,
        crossings=crossings,
        overlaps=degens,
        bend_histogram=dict(hist),
        straight_edge_count=straight,
        bounding_box=box,
        slope_audit=audit,
        violations=violations,
    )


def _axis(d: Drawing, e: int, coord: int) -> bool:
    pts = d.polyline(e)
    return len(pts) == 2 and pts[0][coord] == pts[1][coord]


def crossing_edges(report: VerificationReport) -> set[int]:
    out = set()
    for x in report.crossings:
        out.add(x.e1)
        out.add(x.e2)
    return out


def class_constraints(coloring_classes: Mapping[int, int], horizontal=0, crossing_free=1, vertical=2) -> Constraints:
    """Slope demands for a 3-colored cubic drawing (M1 horizontal, M3 vertical, M2 crossing-free)."""
    return Constraints(
        horizontal=frozenset(e for e, k in coloring_classes.items() if k == horizontal),
        vertical=frozenset(e for e, k in coloring_classes.items() if k == vertical),
        crossing_free=frozenset(e for e, k in coloring_classes.items() if k == crossing_free),
    )


def edge_conflicts(d: Drawing, edges) -> tuple[list[Crossing], list[tuple]]:
    """Crossings and degeneracies that involve at least one of ``edges``.

    Linear in the drawing size per edge; used to test candidate bend points
    without re-running the full sweep.
    """
    d, k = _integral(d)
    crossings, degens = _edge_conflicts(d, set(edges))
    if k != 1:
        crossings = [Crossing(c.e1, c.e2, (c.point[0] / k, c.point[1] / k), c.perpendicular) for c in crossings]
        degens = [_unscale(x, k) for x in degens]
    return crossings, degens


def _integral(d: Drawing) -> tuple[Drawing, int]:
    """An integer copy of ``d`` scaled by the common denominator, and that factor.

    Angles, incidences and crossings are invariant under uniform scaling, and
    plain ints are far cheaper than ``Fraction`` in the inner loops.
    """
    pts = list(d.positions.values()) + [p for b in d.bends.values() for p in b]
    k = 1
    for p in pts:
        for c in p:
            if isinstance(c, Fraction):
                k = lcm(k, c.denominator)
    if k == 1 and all(type(c) is int for p in pts for c in p):
        return d, 1

    def mv(p):
        return (int(p[0] * k), int(p[1] * k))

    return Drawing({v: mv(p) for v, p in d.positions.items()}, d.edges, {e: [mv(p) for p in b] for e, b in d.bends.items()}, d.scale), k


def _unscale(item, k):
    return tuple((Fraction(x[0], k), Fraction(x[1], k)) if isinstance(x, tuple) and len(x) == 2 else x for x in item)


def _edge_conflicts(d: Drawing, focus: set) -> tuple[list[Crossing], list[tuple]]:
    segs = _segments(d)
    mine = [s for s in segs if s[4] in focus]
    crossings: list[Crossing] = []
    degens: list[tuple] = []
    verts = [("V", v, x, y) for v, (x, y) in d.positions.items()]
    for s in mine:
        for t in segs:
            if t[4] in focus and (t[4], t[5]) <= (s[4], s[5]):
                continue
            _check_pair(s, t, crossings, degens)
        for vt in verts:
            _check_pair(vt, s, crossings, degens)
    for e in focus:
        for p in d.bends.get(e, ()):
            if tuple(p) in {tuple(q) for q in d.positions.values()}:
                degens.append(("bend-on-vertex", e, None))
    return crossings, degens
