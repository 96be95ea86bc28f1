import pytest

from racdraw.decompose import oddness_decomposition
from racdraw.io import generate
from racdraw.oddness import OddnessMismatch, draw_oddness2, draw_oddness_k
from racdraw.verify import Constraints, verify


@pytest.mark.parametrize("spec", ["petersen", "tietze", "petersen_chain(2)", "petersen_join(30)"])
def test_straight_line_oddness_two(spec):
    g = generate(spec, 2).graph
    d = draw_oddness2(g)
    rep = verify(g, d, Constraints(max_bends=0))
    assert rep.ok, rep.violations


def test_k4_refused():
    with pytest.raises(OddnessMismatch):
        draw_oddness2(generate("K4").graph)
    with pytest.raises(OddnessMismatch):
        draw_oddness_k(generate("K4").graph)


@pytest.mark.parametrize("spec", ["petersen", "tietze", "petersens(2)", "petersens(3)", "petersen_chain(3)", "petersen_join(40)"])
def test_bent_edges_are_the_m4_edges(spec):
    g = generate(spec, 5).graph
    dec = oddness_decomposition(g)
    d = draw_oddness_k(g, dec)
    rep = verify(g, d, Constraints(max_bends=1))
    assert rep.ok, rep.violations
    bent = sorted(e for e, b in d.bends.items() if b)
    assert bent == sorted(dec.m4_edges) and len(bent) == dec.k


def test_area_is_quadratic():
    g = generate("petersen_join(80)", 1).graph
    for f in (draw_oddness2, draw_oddness_k):
        d = f(g)
        w, h = verify(g, d).bounding_box
        assert w * h <= (4 * g.n) ** 2 * d.scale**2
