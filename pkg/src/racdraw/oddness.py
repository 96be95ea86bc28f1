"""RAC drawings of bridgeless cubic graphs that are not 3-edge-colorable.

With oddness k the graph splits into a perfect matching M1, two matchings M2, M3
and a matching M4 holding one edge per odd cycle. Subdividing every M4 edge
gives a 3-edge-colorable graph for the cubic algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import (
    OddnessDecomposition,
    _color_even_cycle,
    _color_odd_at,
    check_cubic_bridgeless,
    cycles_of_two_factor,
    enumerate_perfect_matchings,
    oddness_decomposition,
    perfect_matching_cubic,
    best_perfect_matching,
)
from .drawing import Drawing, tile
from .graph import Graph, GraphError, make_coloring
from .rac3 import M1, M2, M3, _build_auxiliary, _Colored, assign_coordinates, compute_orders, rac3_layout
from .verify import Constraints, verify


class OddnessMismatch(GraphError):
    pass


class NoCleanVariant(RuntimeError):
    pass


@dataclass
class Subdivided:
    graph: Graph
    classes: list[int]
    dummy: dict[int, int]  # M4 edge id -> dummy vertex
    ends: dict[int, tuple[int, int]]  # M4 edge id -> (u, w), u gets the M2 half


def subdivide_m4(g: Graph, dec: OddnessDecomposition) -> Subdivided:
    """Replace each M4 edge (u, w) by u - v - w, colored with the colors free at u and w."""
    classes = list(dec.coloring.classes)
    inc = g.incidence()
    edges = list(g.edges)
    out_classes = list(classes)
    dummy, ends = {}, {}
    n = g.n
    for e in dec.m4_edges:
        a, b = g.edges[e]
        free = {}
        for x in (a, b):
            used = {classes[f] for f in inc[x] if f != e}
            free[x] = {M1, M2, M3} - used
        # pick u as the endpoint that can take M2
        u, w = (a, b) if M2 in free[a] else (b, a)
        if M2 not in free[u] or M3 not in free[w]:
            u, w = (a, b) if M3 in free[b] else (b, a)
            cu, cw = sorted(free[u])[0], sorted(free[w] - {sorted(free[u])[0]})[0]
        else:
            cu, cw = M2, M3
        v = n
        n += 1
        edges[e] = (u, v)
        out_classes[e] = cu
        edges.append((v, w))
        out_classes.append(cw)
        dummy[e] = v
        ends[e] = (u, w)
    return Subdivided(Graph(n, tuple(edges)), out_classes, dummy, ends)


def _as_bent(g: Graph, sub: Subdivided, d: Drawing) -> Drawing:
    pos = {v: d.positions[v] for v in range(g.n)}
    bends = {}
    for e, v in sub.dummy.items():
        bends[e] = [d.positions[v]]
    edges = {}
    for e in range(g.m):
        if e in sub.dummy:
            u, w = sub.ends[e]
            edges[e] = (u, w)
        else:
            edges[e] = g.edges[e]
    return Drawing(pos, edges, bends, d.scale)


def draw_oddness_k(g: Graph, dec: OddnessDecomposition | None = None) -> Drawing:
    """1-bend RAC drawing in which exactly the M4 edges carry a bend."""
    if dec is None:
        dec = oddness_decomposition(g)
    if dec.k < 2:
        raise OddnessMismatch(f"oddness {dec.k}: use the cubic algorithm directly")
    sub = subdivide_m4(g, dec)
    d = rac3_layout(sub.graph, sub.classes).drawing
    return _as_bent(g, sub, d)


# ---------------------------------------------------------------- oddness 2
#
# Both M4 edges are removed and the rest is drawn by the cubic algorithm with
# the bridge endpoint u as origin. The H_x path of c (what is left of the odd
# cycle) is walked from w so that w owns the leftmost column, and the path of c'
# is ranked last so that w' owns the rightmost column. Pushing w left, w' right
# and the bridge rows down by N = W + H opens two empty wedges below row 2 in
# which (u, w) and (u', w') run without crossings.


def bridged_decompositions(g: Graph, enumerate_limit: int = 24, samples: int = 64, seed: int = 0):
    """Oddness-2 decompositions whose odd cycles are joined by a single M1 edge.

    Small graphs are searched exhaustively; larger ones through random perfect
    matchings. The default decomposition (arbitrary bridge path) comes last.
    """
    if g.n <= enumerate_limit:
        matchings = enumerate_perfect_matchings(g)
    else:
        matchings = (perfect_matching_cubic(g, seed + i) for i in range(samples))
    lookup = {(min(a, b), max(a, b)): e for e, (a, b) in enumerate(g.edges)}
    seen = set()
    for pm in matchings:
        pm = tuple(sorted(pm))
        if pm in seen:
            continue
        seen.add(pm)
        rest = set(range(g.m)) - set(pm)
        cycles = cycles_of_two_factor(g, rest)
        odd = [c for c in cycles if len(c) % 2]
        if len(odd) != 2:
            continue
        c, c2 = odd
        in_c, in_c2 = set(c), set(c2)
        for e in pm:
            a, b = g.edges[e]
            if a in in_c2:
                a, b = b, a
            if a not in in_c or b not in in_c2:
                continue
            for w in _cycle_nbrs(c, a):
                for w2 in _cycle_nbrs(c2, b):
                    classes = [-1] * g.m
                    for f in pm:
                        classes[f] = M1
                    for cyc in cycles:
                        if len(cyc) % 2 == 0:
                            _color_even_cycle(cyc, lookup, classes)
                    _color_odd_at(c, a, w, lookup, classes)
                    _color_odd_at(c2, b, w2, lookup, classes)
                    m4 = (lookup[_k(a, w)], lookup[_k(b, w2)])
                    yield OddnessDecomposition(make_coloring(g, classes, 4), (tuple(c), tuple(c2)), m4, 2, False, (a, w, b, w2, (a, b)))
    yield oddness_decomposition(g)


def _k(a, b):
    return (a, b) if a < b else (b, a)


def _cycle_nbrs(cyc, x):
    i = cyc.index(x)
    return sorted({cyc[i - 1], cyc[(i + 1) % len(cyc)]})


def oddness2_layout(g: Graph, dec: OddnessDecomposition, spread: int | None = None) -> Drawing:
    """Straight-line drawing for one decomposition; not verified here."""
    u, w, u2, w2, path = dec.bridge
    m4 = {_edge_id(g, u, w), _edge_id(g, u2, w2)}
    keep = [e for e in range(g.m) if e not in m4]
    sub = Graph(g.n, tuple(g.edges[e] for e in keep))
    classes = [dec.coloring.classes[e] for e in keep]
    cg = _Colored(sub, classes)
    forest = _build_auxiliary(cg, u)
    orders = compute_orders(cg, forest, path_start={w: w}, defer_x=u2)
    if orders.estar is not None:
        raise GraphError("bridge origin carries an M2 edge")
    pos = dict(assign_coordinates(cg, orders).positions)
    W = max(p[0] for p in pos.values())
    H = max(p[1] for p in pos.values())
    N = spread if spread is not None else W + H
    for x in path:
        pos[x] = (pos[x][0], pos[x][1] - N)
    pos[w] = (pos[w][0] - N, pos[w][1])
    pos[w2] = (pos[w2][0] + N, pos[w2][1])
    return Drawing(pos, dict(enumerate(g.edges)))


def _edge_id(g: Graph, a: int, b: int) -> int:
    for e, (x, y) in enumerate(g.edges):
        if {x, y} == {a, b}:
            return e
    raise GraphError(f"no edge {a}-{b}")


def _oddness2_connected(g: Graph, dec: OddnessDecomposition | None, max_tries: int) -> Drawing:
    candidates = [dec] if dec is not None else bridged_decompositions(g)
    tried = 0
    last = ""
    for cand in candidates:
        if cand.k != 2:
            raise OddnessMismatch(f"oddness decomposition has k={cand.k}, expected 2")
        tried += 1
        try:
            d = oddness2_layout(g, cand)
        except (GraphError, RuntimeError) as exc:
            last = str(exc)
        else:
            rep = verify(g, d, Constraints(max_bends=0))
            if rep.ok:
                return d
            last = f"{len(rep.crossings)} crossings, {len(rep.overlaps)} degeneracies"
        if tried >= max_tries:
            break
    raise NoCleanVariant(f"no decomposition out of {tried} gave a clean drawing (last: {last})")


def _component_drawing(g: Graph, max_tries: int) -> Drawing:
    pm, k, _ = best_perfect_matching(g)
    if k == 0:
        dec = oddness_decomposition(g, matching=pm)
        return rac3_layout(g, dec.coloring.classes).drawing
    if k != 2:
        raise OddnessMismatch(f"best perfect matching leaves {k} odd cycles")
    return _oddness2_connected(g, None, max_tries)


def draw_oddness2(g: Graph, dec: OddnessDecomposition | None = None, max_tries: int = 200) -> Drawing:
    """Straight-line RAC drawing of a bridgeless cubic graph of oddness 2.

    Without an explicit decomposition, candidates are tried until one passes
    the verifier; NoCleanVariant is raised when none does.
    """
    check_cubic_bridgeless(g)
    if dec is not None:
        return _oddness2_connected(g, dec, max_tries)
    comps = g.components()
    if len(comps) == 1:
        if best_perfect_matching(g)[1] == 0:
            raise OddnessMismatch("graph is 3-edge-colorable (oddness 0)")
        return _oddness2_connected(g, None, max_tries)
    parts = []
    for comp in comps:
        sub, vmap, emap = g.subgraph(comp)
        d = _component_drawing(sub, max_tries)
        parts.append(Drawing({vmap[x]: p for x, p in d.positions.items()}, {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in d.edges.items()}))
    return tile(parts)[0]
