import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cycle, random_graph
from racdraw.decompose import (
    augment_and_decompose,
    check_two_factor_decomposition,
    enumerate_perfect_matchings,
    odd_cycle_count,
    oddness_decomposition,
    perfect_matching_cubic,
    three_edge_color,
)
from racdraw.graph import Graph
from racdraw.io import generate, prism


def _assert_factors(g: Graph, tfd):
    aug = tfd.augmented
    for f in tfd.factors:
        outs = Counter(aug.edges[a][0] for a in f)
        ins = Counter(aug.edges[a][1] for a in f)
        assert all(outs[v] == 1 and ins[v] == 1 for v in range(aug.n))
    used = sorted(x for f in tfd.factors for x in f)
    assert used == list(range(aug.m))
    real = [tfd.origin[a] for a in range(len(tfd.origin)) if tfd.origin[a] >= 0]
    assert sorted(real) == list(range(g.m))
    for a, e in enumerate(tfd.origin):
        if e >= 0:
            assert sorted(aug.edges[a]) == sorted(g.edges[e])
            assert a not in aug.fake
    check_two_factor_decomposition(g, tfd)


def test_cycle_is_its_own_factor():
    g = cycle(5)
    tfd = augment_and_decompose(g)
    assert tfd.d == 1 and not tfd.fake_edges and tfd.augmented.n == 5
    _assert_factors(g, tfd)


def test_single_edge_gets_a_fake_twin():
    g = Graph(2, ((0, 1),))
    tfd = augment_and_decompose(g)
    assert tfd.d == 1 and len(tfd.fake_edges) == 1
    assert sorted(tfd.cycles(0)[0]) == [0, 1]


def test_k4():
    g = generate("K4").graph
    tfd = augment_and_decompose(g)
    assert tfd.d == 2
    _assert_factors(g, tfd)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 40), st.integers(1, 7))
def test_factor_properties_random(seed, n, cap):
    rng = random.Random(seed)
    g = random_graph(rng, n, cap, rng.randint(1, 4 * n))
    if g.m == 0:
        return
    tfd = augment_and_decompose(g)
    top = max(Counter(x for e in g.edges for x in e).values())
    assert tfd.d == (top + 1) // 2
    _assert_factors(g, tfd)


def test_min_factors_pads():
    g = cycle(6)
    assert augment_and_decompose(g, min_factors=3).d == 3


def test_three_edge_color():
    k4 = generate("K4").graph
    col = three_edge_color(k4)
    for c in range(3):
        covered = sorted(x for e in col.matching(c) for x in k4.edges[e])
        assert covered == [0, 1, 2, 3]
    assert three_edge_color(generate("petersen").graph) is None
    c6 = three_edge_color(cycle(6))
    assert len(set(c6.classes)) == 2


@pytest.mark.parametrize("g", [generate("K4").graph, cycle(6), generate("petersen").graph])
def test_perfect_matching(g):
    m = perfect_matching_cubic(g) if g.m == 3 * g.n // 2 else None
    if m is None:
        m = next(iter(enumerate_perfect_matchings(g)))
    covered = sorted(x for e in m for x in g.edges[e])
    assert covered == list(range(g.n))


def test_oddness_values():
    assert oddness_decomposition(generate("K4").graph).k == 0
    assert oddness_decomposition(prism(3).graph).k == 0
    od = oddness_decomposition(generate("petersen").graph)
    assert od.k == 2 and sorted(map(len, od.odd_cycles)) == [5, 5]
    assert len(od.m4_edges) == 2


@pytest.mark.parametrize("spec", ["petersen", "tietze", "petersen_chain(2)"])
def test_bridge_path(spec):
    g = generate(spec).graph
    od = oddness_decomposition(g)
    assert od.k == 2
    u, w, u2, w2, path = od.bridge
    c1, c2 = (set(c) for c in od.odd_cycles)
    assert path[0] == u and path[-1] == u2
    assert all(x not in c1 and x not in c2 for x in path[1:-1])
    cls = od.coloring.classes
    lookup = {frozenset(e): i for i, e in enumerate(g.edges)}
    colors = [cls[lookup[frozenset((a, b))]] for a, b in zip(path, path[1:])]
    assert all(c in (0, 1) for c in colors)
    assert all(a != b for a, b in zip(colors, colors[1:]))


@pytest.mark.parametrize("spec", ["K4", "petersen", "tietze", "prism", "Q3", "petersen_chain(2)"])
def test_oddness_matches_brute_force(spec):
    g = generate(spec).graph
    truth = min(odd_cycle_count(g, m) for m in enumerate_perfect_matchings(g))
    assert oddness_decomposition(g).k == truth
