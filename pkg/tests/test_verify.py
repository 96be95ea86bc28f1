from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from racdraw.drawing import Drawing, MalformedDrawing, bounding_box
from racdraw.graph import Graph, make_coloring
from racdraw.io import generate
from racdraw.rac3 import draw_rac3
from racdraw.twobend import draw_2bend_deg7
from racdraw.verify import Constraints, edge_conflicts, verify

TWO = Graph(4, ((0, 1), (2, 3)))


def _pair(a, b, c, d):
    return Drawing({0: a, 1: b, 2: c, 3: d}, {0: (0, 1), 1: (2, 3)})


def test_perpendicular_cross():
    rep = verify(TWO, _pair((0, 0), (2, 2), (0, 2), (2, 0)))
    assert rep.rac_ok and len(rep.crossings) == 1
    assert rep.crossings[0].perpendicular and rep.crossings[0].point == (1, 1)


def test_oblique_cross():
    rep = verify(TWO, _pair((0, 0), (2, 1), (0, 1), (2, 0)))
    assert not rep.rac_ok and not rep.crossings[0].perpendicular
    assert rep.crossings[0].point == (1, Fraction(1, 2))


def test_degeneracies():
    # collinear overlap
    assert not verify(TWO, _pair((0, 0), (4, 0), (2, 0), (6, 0))).rac_ok
    # a segment running through a foreign vertex
    assert not verify(TWO, _pair((0, 0), (4, 0), (2, 0), (2, 3))).rac_ok
    # touching a bend of another edge
    d = Drawing({0: (0, 0), 1: (4, 0), 2: (2, 2), 3: (6, 2)}, {0: (0, 1), 1: (2, 3)}, {1: [(2, 0)]})
    assert not verify(TWO, d).rac_ok


def test_adjacent_edges_share_endpoints():
    g = Graph(3, ((0, 1), (1, 2)))
    d = Drawing({0: (0, 0), 1: (1, 1), 2: (2, 0)}, {0: (0, 1), 1: (1, 2)})
    rep = verify(g, d)
    assert rep.rac_ok and not rep.crossings


def test_rac3_c4_report():
    g = Graph(4, ((0, 1), (2, 3), (1, 2), (3, 0)))
    d = draw_rac3(g, make_coloring(g, [0, 0, 1, 1], 3))
    rep = verify(g, d, Constraints(max_bends=0, max_width=8, max_height=8))
    assert rep.ok and not rep.crossings and rep.bend_histogram == {0: 4}
    assert bounding_box(d) == (3, 1)


def test_bounding_box_single_vertex():
    assert bounding_box(Drawing({0: (5, 7)}, {})) == (0, 0)


def test_deg7_box():
    g = generate("K8")
    d = draw_2bend_deg7(g.graph, g.coloring.matching(6))
    w, h = bounding_box(d)
    assert w <= 64 and h <= 64


def test_constraints():
    d = _pair((0, 0), (2, 2), (0, 2), (2, 0))
    assert verify(TWO, d, Constraints(horizontal=frozenset({0}))).violations
    assert verify(TWO, d, Constraints(crossing_free=frozenset({1}))).violations
    assert verify(TWO, d, Constraints(max_width=1)).violations
    assert verify(TWO, d, Constraints(min_straight=3)).violations
    bent = Drawing(d.positions, d.edges, {0: [(2, 0)]})
    assert verify(TWO, bent, Constraints(max_bends=0)).violations
    assert verify(TWO, d, Constraints(max_bends=0, max_width=2, min_straight=2)).ok


def test_coincident_points_are_degenerate():
    rep = verify(TWO, Drawing({0: (0, 0), 1: (1, 1), 2: (0, 0), 3: (2, 3)}, {0: (0, 1), 1: (2, 3)}))
    assert not rep.rac_ok and rep.overlaps[0][0] == "vertex-coincide"
    d = Drawing({0: (0, 0), 1: (4, 0), 2: (0, 2), 3: (4, 2)}, {0: (0, 1), 1: (2, 3)}, {0: [(0, 2)]})
    assert any(o[0] == "bend-on-vertex" for o in verify(TWO, d).overlaps)


def test_malformed():
    with pytest.raises(MalformedDrawing):
        verify(TWO, Drawing({0: (0, 0), 1: (1, 1), 2: (3, 0), 3: (2, 2)}, {0: (0, 1)}))
    with pytest.raises(MalformedDrawing):
        verify(TWO, _pair((0, 0), (1.5, 1), (3, 0), (2, 2)))


def test_edge_conflicts_focus():
    d = _pair((0, 0), (2, 1), (0, 1), (2, 0))
    cross, _ = edge_conflicts(d, [0])
    assert len(cross) == 1 and not cross[0].perpendicular


def test_to_dict_schema():
    rep = verify(TWO, _pair((0, 0), (2, 1), (0, 1), (2, 0)))
    doc = rep.to_dict()
    assert doc["rac_ok"] is False and doc["bend_histogram"] == {"0": 2}
    assert doc["crossings"][0]["point"] == [1, "1/2"]


coord = st.integers(-6, 6)


@given(coord, coord, coord, coord, coord, coord, coord, coord, st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 5))
def test_translation_and_scale_invariance(a, b, c, d, e, f, g_, h, dx, dy, k):
    pts = [(a, b), (c, d), (e, f), (g_, h)]
    if len(set(pts)) < 4:
        return
    base = _pair(*pts)
    r0 = verify(TWO, base)
    for other in (base.translated(dx, dy), base.multiplied(k)):
        r1 = verify(TWO, other)
        assert r1.rac_ok == r0.rac_ok and len(r1.crossings) == len(r0.crossings)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_perpendicularity_is_the_dot_product(p, q, r, s):
    # segments through the origin with directions (p, q) and (-r, s)
    g = TWO
    d = Drawing({0: (-p, -q), 1: (p, q), 2: (r, -s), 3: (-r, s)}, {0: (0, 1), 1: (2, 3)})
    rep = verify(g, d)
    if p * r == q * s:
        assert rep.rac_ok
    else:
        assert not rep.rac_ok or not rep.crossings
