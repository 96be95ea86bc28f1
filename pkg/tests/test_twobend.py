from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from racdraw.decompose import augment_and_decompose
from racdraw.graph import DegreeTooHigh, Graph
from racdraw.io import generate
from racdraw.twobend import (
    HALF,
    BadDecomposition,
    _split,
    choose_matching,
    compute_tags,
    compute_x_order,
    draw_2bend_deg7,
    order_cycles_y,
    route_boxes,
)
from racdraw.verify import Constraints, verify


def pipeline(g, matching):
    h, hmap, medges = _split(g, matching)
    yo = order_cycles_y(augment_and_decompose(h, min_factors=3))
    cs = compute_tags(yo, g.n, hmap, medges)
    xrank, etm = compute_x_order(cs)
    return cs, xrank, etm, route_boxes(cs, xrank, etm)


def segments(d, e):
    pts = d.polyline(e)
    return list(zip(pts, pts[1:]))


def on_segment(p, a, b):
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    return cross == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def enters_open_box(a, b, cx, cy, r):
    """Liang-Barsky clip against the closed box, then test the clipped midpoint."""
    t0, t1 = Fraction(0), Fraction(1)
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in ((-dx, a[0] - (cx - r)), (dx, cx + r - a[0]), (-dy, a[1] - (cy - r)), (dy, cy + r - a[1])):
        if p == 0:
            if q < 0:
                return False
            continue
        t = Fraction(q, p)
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    if t0 >= t1:
        return False
    tm = (t0 + t1) / 2
    mx, my = a[0] + tm * dx, a[1] + tm * dy
    return abs(mx - cx) < r and abs(my - cy) < r


def check_drawing(g, d):
    rep = verify(g, d, Constraints(max_bends=2))
    assert rep.ok, rep.violations[:5]
    assert all(len(d.bends[e]) == 2 for e in range(g.m))
    assert all(0 <= c <= 8 * g.n for p in d.points() for c in p)
    for c in rep.crossings:
        for e in (c.e1, c.e2):
            hits = [(a, b) for a, b in segments(d, e) if on_segment(c.point, a, b)]
            assert hits and all(a[0] == b[0] or a[1] == b[1] for a, b in hits), (e, c)
    return rep


def check_boxes(g, d):
    for v, (cx, cy) in d.positions.items():
        for e, (a, b) in enumerate(g.edges):
            if v in (a, b):
                continue
            for p, q in segments(d, e):
                assert not enters_open_box(p, q, cx, cy, HALF), (v, e, p, q)


def check_structure(cs, xrank, etm):
    fours = set()
    for v, (a, b) in cs.tag.items():
        assert a <= 3 and b <= 2 and a + b <= 4
        if a + b == 4:
            assert cs.cycle_of[v] not in fours
            fours.add(cs.cycle_of[v])
    for v, w in etm.partner.items():
        assert etm.partner[w] == v and abs(xrank[v] - xrank[w]) == 1


def test_k8_round_robin():
    gi = generate("K8")
    cs, xrank, etm, d = pipeline(gi.graph, gi.coloring.matching(6))
    check_structure(cs, xrank, etm)
    check_drawing(gi.graph, d)
    check_boxes(gi.graph, d)
    assert all(0 <= c <= 64 for p in d.points() for c in p)


def test_horizontal_edges_use_shared_boundary():
    gi = generate("K8")
    cs, _, etm, d = pipeline(gi.graph, gi.coloring.matching(6))
    assert cs.horizontal
    for e, lo, hi in cs.horizontal:
        assert etm.kind[e] == "h"
        (x1, y1), (x2, y2) = d.bends[e]
        assert y1 == y2 == (d.positions[lo][1] + d.positions[hi][1]) / 2


@pytest.mark.parametrize("n", [8, 10, 14, 20, 30])
def test_reg7col_sample(n):
    gi = generate(f"reg7col({n})", n)
    cs, xrank, etm, d = pipeline(gi.graph, gi.coloring.matching(gi.coloring.k - 1))
    check_structure(cs, xrank, etm)
    check_drawing(gi.graph, d)
    check_boxes(gi.graph, d)


@settings(max_examples=25, deadline=None)
@given(half=st.integers(4, 20), seed=st.integers(0, 10_000))
def test_reg7col_random(half, seed):
    gi = generate(f"reg7col({2 * half})", seed)
    d = draw_2bend_deg7(gi.graph, gi.coloring.matching(gi.coloring.k - 1))
    check_drawing(gi.graph, d)


def test_degree_six_without_matching():
    k7 = Graph(7, tuple((i, j) for i in range(7) for j in range(i + 1, 7)))
    d = draw_2bend_deg7(k7, [])
    check_drawing(k7, d)
    check_boxes(k7, d)


def test_matching_only():
    g = Graph(6, ((0, 1), (2, 3), (4, 5)))
    d = draw_2bend_deg7(g, [0, 1, 2])
    check_drawing(g, d)


def test_automatic_matching():
    for spec in ("K8", "K5_5", "reg7col(12)"):
        g = generate(spec, 3).graph
        check_drawing(g, draw_2bend_deg7(g))


def test_choose_matching_covers_heavy_vertices():
    for seed in range(5):
        g = generate("reg7col(16)", seed).graph
        m = choose_matching(g)
        ends = [x for e in m for x in g.edges[e]]
        assert len(ends) == len(set(ends)) == g.n
    assert choose_matching(generate("petersen").graph) == []


def test_rejects_bad_matching():
    g = generate("K8").graph
    shared = [e for e, (u, v) in enumerate(g.edges) if 0 in (u, v)][:2]
    with pytest.raises(BadDecomposition):
        draw_2bend_deg7(g, shared)
    with pytest.raises(BadDecomposition):
        draw_2bend_deg7(g, [])
    with pytest.raises(BadDecomposition):
        draw_2bend_deg7(g, [g.m])


def test_rejects_degree_eight():
    k9 = Graph(9, tuple((i, j) for i in range(9) for j in range(i + 1, 9)))
    with pytest.raises(DegreeTooHigh):
        draw_2bend_deg7(k9)
