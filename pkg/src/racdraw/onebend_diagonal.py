"""1-bend RAC drawings of degree-4 graphs with every vertex on the diagonal.

Vertex number i of the order sits at (i, i). Edges of the first 2-factor F1
join consecutive vertices of a block (one block per cycle) and stay straight.
An arc (u, w) of F2 bends at (x_w, y_u): horizontal from u, vertical into w,
so it never meets the diagonal. Each cycle then needs its closing edge; the
cheap routes go around a corner of the block, the rest move the first vertex
into the strip just below the second one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .decompose import TwoFactorDecomposition, augment_and_decompose
from .drawing import Drawing
from .graph import Graph, check_degree
from .verify import edge_conflicts

THIRD = Fraction(1, 3)


class CaseAnalysisExhausted(RuntimeError):
    def __init__(self, msg: str, cycle: int | None = None):
        super().__init__(msg)
        self.cycle = cycle  # smallest vertex of the stuck cycle


@dataclass
class Block:
    verts: list[int]
    path: list[int]  # arc between verts[j] and verts[j+1]
    closing: int  # arc between verts[-1] and verts[0]
    route: str = ""


@dataclass
class PortAssignment:
    """vertex -> {"N", "E", "S", "W"} -> arc id occupying that port."""

    used: dict[int, dict[str, int]] = field(default_factory=dict)

    def free(self, v: int, port: str) -> bool:
        return port not in self.used.get(v, {})

    def opposite_free(self) -> bool:
        return all(not ({"E", "W"} <= p.keys() or {"N", "S"} <= p.keys()) for p in self.used.values())


@dataclass
class DiagonalLayout:
    tfd: TwoFactorDecomposition
    f1: int
    blocks: list[Block]
    rank: dict[int, int]
    drawing: Drawing | None = None
    ports: PortAssignment | None = None

    @property
    def order(self) -> list[int]:
        return [v for b in self.blocks for v in b.verts]


def _real(tfd: TwoFactorDecomposition, a: int) -> bool:
    return a not in tfd.augmented.fake


def _cycle_arcs(tfd: TwoFactorDecomposition, f: int) -> list[list[int]]:
    aug = tfd.augmented
    succ = tfd.succ(f)
    seen: set[int] = set()
    out = []
    for s in range(aug.n):
        if s in seen:
            continue
        arcs = []
        v = s
        while v not in seen:
            seen.add(v)
            arcs.append(succ[v])
            v = aug.edges[succ[v]][1]
        out.append(arcs)
    return out


def _arrange(tfd: TwoFactorDecomposition, arcs: list[int], r: int, forward: bool) -> Block:
    """Block starting at the tail of arc ``r``, walked along or against the arcs."""
    k = len(arcs)
    aug = tfd.augmented
    if forward:
        seq = [arcs[(r + j) % k] for j in range(k)]
        verts = [aug.edges[a][0] for a in seq]
        return Block(verts, seq[:-1], seq[-1])
    seq = [arcs[(r - 1 - j) % k] for j in range(k)]
    verts = [aug.edges[seq[0]][1]] + [aug.edges[a][0] for a in seq[:-1]]
    return Block(verts, seq[:-1], seq[-1])


def _ports_in_block(tfd, f2_out, f2_in, block: Block, key) -> list[set[str]]:
    """Ports used by real F2 arcs at each block vertex; ``key(v)`` ranks vertices."""
    aug = tfd.augmented
    out = []
    for v in block.verts:
        used = set()
        a = f2_out[v]
        if _real(tfd, a):
            used.add("E" if key(aug.edges[a][1]) > key(v) else "W")
        a = f2_in[v]
        if _real(tfd, a):
            used.add("S" if key(aug.edges[a][0]) < key(v) else "N")
        out.append(used)
    return out


# Corner routes for the closing edge of a block [lo, hi], first vertex unmoved:
# name -> (port needed free at the first vertex, at the last vertex, port no
# inner vertex may use). The slanted variants cut through a strip one third
# wide that only the listed inner ports can reach.
CORNER_RULES = {
    "LR": ("E", "S", None),
    "UL": ("N", "W", None),
    "slant-S": (None, "S", "S"),
    "slant-W": (None, "W", "W"),
    "slant-E": ("E", None, "E"),
    "slant-N": ("N", None, "N"),
}


def _corner_ok(ports: list[set[str]], rule) -> bool:
    first, last, inner = rule
    if first and first in ports[0]:
        return False
    if last and last in ports[-1]:
        return False
    return not inner or all(inner not in p for p in ports[1:-1])


def choose_diagonal_order(tfd: TwoFactorDecomposition, front=(), back=()) -> DiagonalLayout:
    """Blocks in a fixed cycle order, each rotated to make its closing edge cheap.

    Preference: a fake closing edge; then a rotation whose corner route has
    both ports free; otherwise the rotation with an external backward edge at
    the first vertex (or forward at the last), left for the move search.
    """
    if tfd.d != 2:
        raise ValueError("diagonal layout needs exactly two 2-factors")
    real_count = [sum(_real(tfd, a) for a in f) for f in tfd.factors]
    f1 = 0 if real_count[0] >= real_count[1] else 1
    f2 = 1 - f1
    front, back = list(front), list(back)

    def place(arcs):
        low = min(tfd.augmented.edges[a][0] for a in arcs)
        if low in front:
            return (0, front.index(low))
        if low in back:
            return (2, -back.index(low))
        return (1, low)

    cycles = sorted(_cycle_arcs(tfd, f1), key=place)
    block_of = {}
    for i, arcs in enumerate(cycles):
        for a in arcs:
            block_of[tfd.augmented.edges[a][0]] = i
    f2_out = tfd.succ(f2)
    f2_in = tfd.pred(f2)
    blocks = []
    for i, arcs in enumerate(cycles):
        blocks.append(_pick_rotation(tfd, arcs, i, block_of, f2_out, f2_in))
    rank = {}
    for b in blocks:
        for v in b.verts:
            rank[v] = len(rank) + 1
    return DiagonalLayout(tfd, f1, blocks, rank)


def _pick_rotation(tfd, arcs, i, block_of, f2_out, f2_in) -> Block:
    aug = tfd.augmented
    k = len(arcs)
    fake = [r for r, a in enumerate(arcs) if not _real(tfd, a)]
    if fake:
        b = _arrange(tfd, arcs, (fake[0] + 1) % k, True)
        b.route = "fake"
        return b
    options = [(r, fw) for r in range(k) for fw in (True, False)]
    for r, fw in options:
        b = _arrange(tfd, arcs, r, fw)
        local = {v: j for j, v in enumerate(b.verts)}

        def key(v, local=local):
            return (block_of[v], local.get(v, 0))

        ports = _ports_in_block(tfd, f2_out, f2_in, b, key)
        for name, rule in CORNER_RULES.items():
            if _corner_ok(ports, rule):
                b.route = name
                return b
    ends = []
    if i == 0:
        ends.append((1, {"S", "W"}))
    if i == len(set(block_of.values())) - 1:
        ends.append((0, {"N", "E"}))
    for r, fw in options:
        b = _arrange(tfd, arcs, r, fw)
        local = {v: j for j, v in enumerate(b.verts)}
        ports = _ports_in_block(tfd, f2_out, f2_in, b, lambda v, local=local: (block_of[v], local.get(v, 0)))
        for j, want in ends:
            v = b.verts[-j] if j else b.verts[0]
            if want - ports[-1 if j else 0]:
                b.route = "outer"
                return b
    for r, fw in options:
        b = _arrange(tfd, arcs, r, fw)
        if _gap_ok(tfd, b, i, block_of, f2_out, f2_in):
            b.route = "gap"
            return b
    # no free corner: put a vertex with an external backward edge first
    for r, fw in options:
        b = _arrange(tfd, arcs, r, fw)
        v = b.verts[0]
        for a, end in ((f2_out[v], 1), (f2_in[v], 0)):
            if _real(tfd, a) and block_of[aug.edges[a][end]] < i:
                b.route = "move"
                return b
    b = _arrange(tfd, arcs, 0, True)
    b.route = "move"
    return b


def _gap_ok(tfd, b: Block, i, block_of, f2_out, f2_in) -> bool:
    """Port-level test for moving an extremal vertex into a neighbouring gap square."""
    aug = tfd.augmented
    local = {v: j for j, v in enumerate(b.verts)}

    def side(w):
        # -1 earlier block, 0 same block, 1 later block
        return (block_of[w] > i) - (block_of[w] < i)

    def ports(v):
        return _ports_in_block(tfd, f2_out, f2_in, Block([v], [], -1), lambda w: (block_of[w], local.get(w, 0)))[0]

    first, last = b.verts[0], b.verts[-1]
    for mover, far, sign in ((first, last, 1), (last, first, -1)):
        used = set()
        a = f2_in[mover]
        if _real(tfd, a):
            used.add("down" if sign * side(aug.edges[a][0]) < 0 else "up")
        a = f2_out[mover]
        if _real(tfd, a):
            used.add("left" if sign * side(aug.edges[a][1]) < 0 else "right")
        fp = ports(far)
        need_right, need_up = ("S", "W") if sign > 0 else ("N", "E")
        if ("right" not in used and need_right not in fp) or ("up" not in used and need_up not in fp):
            return True
    return False


def draw_diagonal_base(layout: DiagonalLayout) -> tuple[Drawing, PortAssignment]:
    """Diagonal positions, straight F1 path edges and orthogonal F2 arcs; closing edges omitted."""
    tfd = layout.tfd
    aug = tfd.augmented
    rank = layout.rank
    pos = {v: (rank[v], rank[v]) for v in range(aug.n)}
    d = Drawing(pos, {}, {}, 1)
    ports = PortAssignment({v: {} for v in range(aug.n)})
    for b in layout.blocks:
        for a in b.path:
            if _real(tfd, a):
                d.edges[a] = aug.edges[a]
    for a in tfd.factors[1 - layout.f1]:
        if not _real(tfd, a):
            continue
        u, w = aug.edges[a]
        d.edges[a] = (u, w)
        d.bends[a] = [(rank[w], rank[u])]
        fwd = rank[w] > rank[u]
        ports.used[u]["E" if fwd else "W"] = a
        ports.used[w]["S" if fwd else "N"] = a
    return d, ports


# -------------------------------------------------------------- closing edges


def _clean(d: Drawing, edges) -> bool:
    cross, degens = edge_conflicts(d, edges)
    return not degens and all(c.perpendicular for c in cross)


def _set_edge(d: Drawing, a: int, ends, bend) -> None:
    d.edges[a] = ends
    if bend is None:
        d.bends.pop(a, None)
    else:
        d.bends[a] = [bend]


def _corner_routes(lo: int, hi: int):
    yield "LR", (hi, lo)
    yield "UL", (lo, hi)
    for t in (THIRD, 2 * THIRD):
        yield "slant-S", (hi, lo + t)
        yield "slant-W", (lo + t, hi)
        yield "slant-E", (hi - t, lo)
        yield "slant-N", (lo, hi - t)
    # through the empty half-plane before the first or after the last block
    yield "first-S", (hi, lo - THIRD)
    yield "first-W", (lo - THIRD, hi)
    yield "last-N", (lo, hi + THIRD)
    yield "last-E", (hi + THIRD, lo)
    yield "out-low", (hi + THIRD, lo - THIRD)
    yield "out-high", (lo - THIRD, hi + THIRD)


def _try_corners(d: Drawing, tfd, b: Block, rank) -> bool:
    a = b.closing
    ends = (b.verts[0], b.verts[-1])
    lo, hi = rank[ends[0]], rank[ends[-1]]
    first = b.route if b.route in CORNER_RULES else None
    routes = sorted(_corner_routes(lo, hi), key=lambda r: r[0] != first)
    for name, bend in routes:
        _set_edge(d, a, ends, bend)
        if _clean(d, [a]):
            b.route = name
            return True
    d.edges.pop(a, None)
    d.bends.pop(a, None)
    return False


class _Frame:
    """Affine map between block-relative and absolute coordinates.

    The mover sits at relative position 1. ``flip`` reads the block from its
    last vertex through a point reflection; ``transpose`` mirrors across the
    diagonal. Candidate geometry is generated once in relative terms and the
    verifier judges it in absolute terms.
    """

    def __init__(self, lo: int, hi: int, flip: bool, transpose: bool):
        self.lo, self.hi, self.flip, self.transpose = lo, hi, flip, transpose

    def abs(self, p):
        x, y = (p[1], p[0]) if self.transpose else (p[0], p[1])
        if self.flip:
            return (self.hi + 1 - x, self.hi + 1 - y)
        return (self.lo - 1 + x, self.lo - 1 + y)

    def rel(self, p):
        if self.flip:
            x, y = self.hi + 1 - p[0], self.hi + 1 - p[1]
        else:
            x, y = p[0] - self.lo + 1, p[1] - self.lo + 1
        return (y, x) if self.transpose else (x, y)


def _try_move(d: Drawing, tfd, layout: DiagonalLayout, b: Block) -> bool:
    aug = tfd.augmented
    rank = layout.rank
    f2 = 1 - layout.f1
    f2_out, f2_in = tfd.succ(f2), tfd.pred(f2)
    k = len(b.verts)
    lo, hi = rank[b.verts[0]], rank[b.verts[-1]]
    for flip, transpose in itertools.product((False, True), repeat=2):
        fr = _Frame(lo, hi, flip, transpose)
        verts = b.verts[::-1] if flip else b.verts
        path = b.path[::-1] if flip else b.path
        mover, second, last = verts[0], verts[1], verts[-1]
        arcs = {"c": b.closing, "f": path[0], "o": f2_out[mover], "i": f2_in[mover]}
        other = {
            "c": last,
            "f": second,
            "o": aug.edges[arcs["o"]][1],
            "i": aug.edges[arcs["i"]][0],
        }
        live = {key: a for key, a in arcs.items() if _real(tfd, a) or key == "c"}
        rel = {key: fr.rel((rank[other[key]],) * 2) for key in live}
        chords = sorted({rel[key][0] for key in ("o", "i") if key in rel and 2 <= rel[key][0] <= k})
        saved = {a: (d.edges.get(a), list(d.bends.get(a, []))) for a in live.values()}
        for a in live.values():
            d.edges.pop(a, None)
            d.bends.pop(a, None)
        old_pos = d.positions[mover]
        xs = []
        for c in [k, *chords, 2, 1]:
            for delta in (0, THIRD, -THIRD, 2 * THIRD, -2 * THIRD):
                x = c + delta
                if x >= 1 and x not in xs:
                    xs.append(x)
        gaps = [None] + [j for j in chords if j > 2]
        for gap in gaps:
            gap_arc = path[gap - 2] if gap is not None else None
            if gap is not None and not _real(tfd, gap_arc):
                continue
            if gap is not None:
                gsaved = (d.edges[gap_arc], list(d.bends.get(gap_arc, [])))
                d.bends[gap_arc] = [fr.abs((gap - 2 * THIRD, gap))]
                if not _clean(d, [gap_arc]):
                    d.edges[gap_arc], d.bends[gap_arc] = gsaved[0], gsaved[1]
                    if not d.bends[gap_arc]:
                        del d.bends[gap_arc]
                    continue
            for y in (2 - THIRD, 1 + THIRD):
                for x in xs:
                    if _place_mover(d, fr, mover, (x, y), live, other, rel):
                        b.route = f"move{'-flip' if flip else ''}{'-transpose' if transpose else ''}{'-gap' if gap else ''}"
                        return True
            if gap is not None:
                d.edges[gap_arc] = gsaved[0]
                if gsaved[1]:
                    d.bends[gap_arc] = gsaved[1]
                else:
                    d.bends.pop(gap_arc, None)
        d.positions[mover] = old_pos
        for a, (ends, bends) in saved.items():
            if ends is not None:
                d.edges[a] = ends
                if bends:
                    d.bends[a] = bends
    return False


def _try_gap_move(d: Drawing, tfd, layout: DiagonalLayout, b: Block) -> bool:
    """Move an extremal vertex into the empty square between this block and its neighbour.

    No F1 segment and no vertex lies in that square, and its rows and columns
    carry only perpendicular traffic, so the path edge stays straight along
    the diagonal and the closing edge leaves along the square's row or column.
    """
    aug = tfd.augmented
    rank = layout.rank
    f2 = 1 - layout.f1
    f2_out, f2_in = tfd.succ(f2), tfd.pred(f2)
    k = len(b.verts)
    lo, hi = rank[b.verts[0]], rank[b.verts[-1]]
    for flip in (False, True):
        fr = _Frame(lo, hi, flip, False)
        verts = b.verts[::-1] if flip else b.verts
        path = b.path[::-1] if flip else b.path
        mover = verts[0]
        arcs = {"c": b.closing, "f": path[0], "o": f2_out[mover], "i": f2_in[mover]}
        other = {"c": verts[-1], "f": verts[1], "o": aug.edges[arcs["o"]][1], "i": aug.edges[arcs["i"]][0]}
        live = {key: a for key, a in arcs.items() if _real(tfd, a) or key == "c"}
        rel = {key: fr.rel((rank[other[key]],) * 2) for key in live}
        saved = {a: (d.edges.get(a), list(d.bends.get(a, []))) for a in live.values()}
        old_pos = d.positions[mover]
        for a in live.values():
            d.edges.pop(a, None)
            d.bends.pop(a, None)
        for t in (THIRD, 2 * THIRD):
            p = 1 - t
            if _place_mover(d, fr, mover, (p, p), live, other, rel):
                b.route = "gap" + ("-flip" if flip else "")
                return True
        d.positions[mover] = old_pos
        for a, (ends, bends) in saved.items():
            if ends is not None:
                d.edges[a] = ends
                if bends:
                    d.bends[a] = bends
    return False


def _place_mover(d: Drawing, fr: _Frame, mover: int, P, live, other, rel) -> bool:
    d.positions[mover] = fr.abs(P)
    x, y = P
    options = {}
    for key, a in live.items():
        tx, ty = rel[key]
        cands = [None, (tx, y), (x, ty)]
        if key == "f":
            cands += [(2 + THIRD, y), (2 - THIRD, y)]
        ok = []
        for bend in cands:
            if bend is not None and (bend == P or bend == (tx, ty)):
                continue
            _set_edge(d, a, (mover, other[key]), None if bend is None else fr.abs(bend))
            if _clean(d, [a]):
                ok.append(bend)
        d.edges.pop(a, None)
        d.bends.pop(a, None)
        if not ok:
            return False
        options[key] = ok
    keys = list(options)
    for combo in itertools.product(*(options[k] for k in keys)):
        for key, bend in zip(keys, combo):
            _set_edge(d, live[key], (mover, other[key]), None if bend is None else fr.abs(bend))
        if _clean(d, [live[k] for k in keys]):
            return True
    for key in keys:
        d.edges.pop(live[key], None)
        d.bends.pop(live[key], None)
    return False


def add_closing_edges(layout: DiagonalLayout, base: Drawing, search: bool = True) -> Drawing:
    """Insert every real closing edge with one bend; raises CaseAnalysisExhausted."""
    tfd = layout.tfd
    d = base.copy()
    pending = []
    for b in layout.blocks:
        if b.route == "fake" or not _real(tfd, b.closing):
            continue
        if b.route in CORNER_RULES:
            if not _try_corners(d, tfd, b, layout.rank):
                pending.append(b)
        else:
            pending.append(b)
    for b in pending:
        if _try_corners(d, tfd, b, layout.rank):
            continue
        if _try_gap_move(d, tfd, layout, b):
            continue
        if not (search and _try_move(d, tfd, layout, b)):
            raise CaseAnalysisExhausted(f"no route for the closing edge of block starting at {b.verts[0]}", min(b.verts))
    return d


def diagonal_layout(tfd: TwoFactorDecomposition, attempts: int = 8) -> DiagonalLayout:
    """Lay out and close every block, moving stuck cycles to the ends of the order.

    The first and last blocks border an empty half-plane, which gives their
    closing edges extra routes. The slow mover search is the last resort.
    """
    front: list[int] = []
    back: list[int] = []
    for attempt in range(attempts + 1):
        layout = choose_diagonal_order(tfd, front, back)
        base, ports = draw_diagonal_base(layout)
        layout.ports = ports
        try:
            layout.drawing = add_closing_edges(layout, base, search=attempt == attempts)
            return layout
        except CaseAnalysisExhausted as exc:
            if attempt == attempts:
                raise
            c = exc.cycle
            if c in front:
                front.remove(c)
                back.append(c)
            elif c in back:
                back.remove(c)
                front.insert(0, c)
            else:
                front.append(c)
    raise AssertionError("unreachable")


def draw_1bend_diagonal(g: Graph) -> Drawing:
    """1-bend RAC drawing with at least m/8 straight edges, scaled by 3."""
    check_degree(g, 4)
    if g.m == 0:
        return Drawing({v: (3 * v, 3 * v) for v in range(g.n)}, {}, {}, 3)
    tfd = augment_and_decompose(g, min_factors=2)
    layout = diagonal_layout(tfd)
    d = layout.drawing
    keep = {a: tfd.origin[a] for a in range(len(tfd.origin)) if tfd.origin[a] >= 0}
    final = Drawing(
        {v: d.positions[v] for v in range(g.n)},
        {e: d.edges[a] for a, e in keep.items()},
        {e: list(d.bends[a]) for a, e in keep.items() if d.bends.get(a)},
        1,
    )
    return final.to_integer(3)
