"""1-bend RAC drawings of graphs with maximum degree 4 by vertex splitting.

Every vertex u of the 2-in/2-out augmentation becomes u_s (both incoming
arcs) and u_t (both outgoing arcs) joined by a split edge. The resulting cubic
graph is 3-edge-colored by construction (F1, split, F2), drawn straight-line,
and merged back: u sits where u_s was and each outgoing arc bends next to u_t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .decompose import TwoFactorDecomposition, augment_and_decompose
from .drawing import Drawing
from .graph import Graph, GraphError, check_degree
from .rac3 import M1, M2, M3, Rac3Result, rac3_layout
from .verify import edge_conflicts

HALF = Fraction(1, 2)


class MergeFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class SplitGraph:
    """G_s plus the maps back to the augmented graph.

    Arc ``a`` of the augmentation is edge ``a`` of G_s, drawn between the tail's
    t-copy and the head's s-copy; split edge of u has id ``m_aug + u``.
    """

    base: TwoFactorDecomposition
    graph: Graph
    classes: tuple[int, ...]

    def split_map(self, u: int) -> tuple[int, int]:
        return 2 * u, 2 * u + 1

    @property
    def split_edges(self) -> range:
        m = self.base.augmented.m
        return range(m, m + self.base.augmented.n)


def split_graph(tfd: TwoFactorDecomposition) -> SplitGraph:
    if tfd.d != 2:
        raise GraphError(f"split needs two 2-factors, got {tfd.d}")
    aug = tfd.augmented
    in_f1 = set(tfd.factors[0])
    edges = [(2 * t + 1, 2 * h) for t, h in aug.edges]
    classes = [M1 if a in in_f1 else M3 for a in range(aug.m)]
    edges += [(2 * u, 2 * u + 1) for u in range(aug.n)]
    classes += [M2] * aug.n
    return SplitGraph(tfd, Graph(2 * aug.n, tuple(edges), multigraph=True), tuple(classes))


def _toward(a, b):
    return HALF if b > a else -HALF


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _side_bends(gs: Graph, pos, res: Rac3Result, s: int, t: int, e_split: int, a1: int, a2: int):
    """Bend points for the M1 arc ``a1`` and M3 arc ``a2`` leaving ``t``.

    A long split edge (closing in one order) runs through a strip one unit
    wide. One arc bends exactly at u_t; the other bends half a unit along its
    own segment. The exact arc is the one that cannot fold back across the
    other's new segment.
    """
    pt, ps = pos[t], pos[s]
    x1 = pos[gs.other(a1, t)]
    y1 = pos[gs.other(a2, t)]
    exact = None
    if e_split in res.closing_y:
        # near-vertical split edge
        inward = _sign(x1[0] - pt[0]) == _sign(ps[0] - pt[0])
        forward = _sign(y1[1] - pt[1]) == _sign(pt[1] - ps[1])
        exact = M3 if inward and forward else M1
    elif e_split in res.closing_x:
        inward = _sign(y1[1] - pt[1]) == _sign(ps[1] - pt[1])
        forward = _sign(x1[0] - pt[0]) == _sign(pt[0] - ps[0])
        exact = M1 if inward and forward else M3
    relaxed = res.relaxed
    if a1 in relaxed and a2 in relaxed:
        raise MergeFailed(f"both arcs at {t} lost their axis slope")
    if a1 in relaxed:
        exact = M1
    elif a2 in relaxed:
        exact = M3
    b1 = pt if exact == M1 else (pt[0] + _toward(pt[0], x1[0]), pt[1])
    b2 = pt if exact == M3 else (pt[0], pt[1] + _toward(pt[1], y1[1]))
    if exact != M1 and x1[1] != pt[1]:
        raise MergeFailed(f"M1 arc at {t} is not horizontal")
    if exact != M3 and y1[0] != pt[0]:
        raise MergeFailed(f"M3 arc at {t} is not vertical")
    return b1, b2


def _half_below(bound) -> Fraction:
    """Largest multiple of 1/2 strictly below ``bound``."""
    return Fraction(ceil(Fraction(bound) * 2) - 1, 2)


def _route_estar(d: Drawing, u: int, arcs, targets, transpose: bool, limit: int, scope=None) -> None:
    """Bend both arcs of ``u`` below (or, transposed, left of) everything else.

    Working frame: the source lies left of the rest of the drawing and each
    target is entered vertically from below. The nearer target gets the
    shallower bend; the farther arc passes beneath it. ``scope`` limits the
    clearance computation to the vertices of u's own component.
    """

    def f(p):
        return (p[1], p[0]) if transpose else (p[0], p[1])

    src = f(d.positions[u])
    inside = (lambda v: True) if scope is None else scope.__contains__
    rest = [f(p) for v, p in d.positions.items() if v != u and inside(v)]
    rest += [f(p) for e, pts in d.bends.items() if e not in arcs and inside(d.edges[e][0]) for p in pts]
    xlo = min(p[0] for p in rest)
    ylo = min(p[1] for p in rest)
    tg = sorted((f(p), a) for p, a in zip(targets, arcs))
    if src[0] >= xlo:
        raise MergeFailed("e* source is not left of the drawing")

    def under(X, ymax, xq):
        # bend depth at column X so that the line from src is below ymax at xq
        if xq <= src[0] or xq >= X:
            return _half_below(ymax)
        return _half_below(src[1] + (ymax - src[1]) * Fraction(X - src[0], xq - src[0]))

    (p1, a1), (p2, a2) = tg
    t1 = min(under(p1[0], ylo, xlo), _half_below(ylo))
    t2 = min(under(p2[0], ylo, xlo), under(p2[0], t1, p1[0]), t1 - HALF)
    for _ in range(limit):
        d.bends[a1] = [f((p1[0], t1))]
        d.bends[a2] = [f((p2[0], t2))]
        cross, degens = edge_conflicts(d, (a1, a2))
        if not degens and all(c.perpendicular for c in cross):
            return
        t1 -= HALF
        t2 = min(under(p2[0], ylo, xlo), under(p2[0], t1, p1[0]), t1 - HALF)
    raise MergeFailed(f"no clean bends for the double-closing split edge of {u}")


def merge_and_bend(gamma_s: Drawing, sg: SplitGraph, res: Rac3Result) -> Drawing:
    """Merge u_s and u_t; returns a half-unit drawing of the augmented graph."""
    aug = sg.base.augmented
    gs = sg.graph
    m = aug.m
    pos = gamma_s.positions
    succ1, succ2 = sg.base.succ(0), sg.base.succ(1)
    out = Drawing({u: pos[2 * u] for u in range(aug.n)}, {a: aug.edges[a] for a in range(m)}, {}, 1)
    pending = []
    for u in range(aug.n):
        s, t = 2 * u, 2 * u + 1
        e_split = m + u
        a1, a2 = succ1[u], succ2[u]
        if e_split in res.estar_origin:
            pending.append((u, e_split, a1, a2))
            continue
        if e_split not in res.closing_x and e_split not in res.closing_y:
            dx, dy = pos[t][0] - pos[s][0], pos[t][1] - pos[s][1]
            if abs(dx) != 1 or abs(dy) != 1:
                raise MergeFailed(f"split edge of {u} is neither a unit diagonal nor closing")
        b1, b2 = _side_bends(gs, pos, res, s, t, e_split, a1, a2)
        out.bends[a1] = [b1]
        out.bends[a2] = [b2]
    limit = 4 * (gs.n + 2)
    comp_of = {}
    if pending:
        for comp in gs.components():
            members = {v // 2 for v in comp}
            for v in members:
                comp_of[v] = members
    for u, e_split, a1, a2 in pending:
        s, t = 2 * u, 2 * u + 1
        o = res.estar_origin[e_split]
        targets = [pos[gs.other(a1, t)], pos[gs.other(a2, t)]]
        # the origin is the bottommost vertex; if it is u_t, u (at u_s) is leftmost
        _route_estar(out, u, (a1, a2), targets, transpose=(o == s), limit=limit, scope=comp_of.get(u))
    return out


def draw_1bend_deg4(g: Graph) -> Drawing:
    """1-bend RAC drawing of a graph with maximum degree 4, on a half-unit grid scaled by 2."""
    check_degree(g, 4)
    if g.m == 0:
        return Drawing({v: (2 * v, 0) for v in range(g.n)}, {}, {}, 2)
    tfd = _decompose_without_twins(g)
    sg = split_graph(tfd)
    res = rac3_layout(sg.graph, list(sg.classes))
    merged = merge_and_bend(res.drawing, sg, res)
    keep = {a: tfd.origin[a] for a in range(len(tfd.origin)) if tfd.origin[a] >= 0}
    final = Drawing(
        {v: merged.positions[v] for v in range(g.n)},
        {e: merged.edges[a] for a, e in keep.items()},
        {e: merged.bends[a] for a, e in keep.items()},
        1,
    )
    return final.to_integer(2)



def _twin_arcs(tfd: TwoFactorDecomposition) -> bool:
    """True if some arc u->v occurs in both factors (u_t and v_s would coincide)."""
    f1 = {tfd.augmented.edges[a] for a in tfd.factors[0]}
    return any(tfd.augmented.edges[a] in f1 for a in tfd.factors[1])


def _decompose_without_twins(g: Graph) -> TwoFactorDecomposition:
    tfd = augment_and_decompose(g, min_factors=2)
    extra = 5
    while _twin_arcs(tfd):
        # tiny inputs force triple edges in the padding; isolated helpers give it room
        if extra > 12:
            raise MergeFailed("augmentation keeps producing twin arcs")
        padded = Graph(g.n + extra, g.edges, g.fake, g.multigraph)
        tfd = augment_and_decompose(padded, min_factors=2)
        tfd = TwoFactorDecomposition(tfd.augmented, tfd.factors, tfd.origin, g.n)
        extra += 1
    return tfd
