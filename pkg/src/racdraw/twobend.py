"""2-bend RAC drawings of graphs made of a degree-6 part H plus a matching M.

Vertex u sits at (8 x_u + 4, 8 y_u + 4), the centre of its 8 x 8 box. Every edge has three
segments. Oblique segments stay inside the box of one endpoint; everything
outside boxes runs along a vertex's own row or column, a side-slot line of the
target box, or the boundary shared by two consecutive boxes, so crossings can
only pair a horizontal with a vertical segment.

Edge kinds:

* horizontal type-2: non-closing F1 edges, endpoints consecutive in y; the
  middle segment runs along the shared box boundary;
* vertical type-2: one chord per cycle at most, endpoints consecutive in x;
* type-1: everything else, oriented src -> dst. It leaves src through an
  orthogonal port (N, S, E or W), turns once outside the boxes and enters the
  box of dst through a slot at offset -2, -1, 1 or 2 on the side facing src.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx

from .decompose import TwoFactorDecomposition, augment_and_decompose
from .drawing import Drawing
from .graph import Graph, GraphError, check_degree

PITCH = 8
HALF = PITCH // 2
SLOT_PREFERENCE = (-1, 1, -2, 2)


class BadDecomposition(GraphError):
    pass


class InvariantViolated(RuntimeError):
    pass


class PortExhausted(RuntimeError):
    pass


class BendSlotExhausted(RuntimeError):
    pass


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# ------------------------------------------------------------------ y order


@dataclass
class YOrder:
    """Cycle-block order of the augmented vertices plus the critical arcs.

    ``orient`` maps every critical arc (F2, F3 and closing F1 arcs) to its
    (src, dst); ``horizontal`` lists the non-closing F1 arcs. ``real`` maps an
    arc to the index of the H edge it stands for, after copy swaps.
    """

    n: int
    cycles: list[list[int]]
    rank: dict[int, int]
    orient: dict[int, tuple[int, int]]
    horizontal: list[tuple[int, int, int]]  # (arc, lower, upper)
    closing: dict[int, int]  # cycle index -> arc
    removed: set[int]
    reoriented: list[int]
    real: dict[int, int]

    def labels(self) -> dict[int, tuple[int, int]]:
        up = defaultdict(int)
        down = defaultdict(int)
        for a, (s, t) in self.orient.items():
            if a in self.removed:
                continue
            if self.rank[t] > self.rank[s]:
                up[s] += 1
            else:
                down[s] += 1
        return {v: (up[v], down[v]) for v in range(self.n)}


class _CycleOrderer:
    """Internal order of one F1 cycle plus at most one reoriented arc."""

    def __init__(self, aug: Graph, f1_arcs, crit_src, crit_dst, outs, between, real, removed):
        self.aug = aug
        self.f1_arcs = f1_arcs
        self.src = crit_src
        self.dst = crit_dst
        self.outs = outs
        self.between = between
        self.real = real
        self.removed = removed

    # labels of the vertices of c for a candidate order
    def _ok(self, c_order, closing_src, closing_dst, cyc_of, ci) -> bool:
        pos = {v: i for i, v in enumerate(c_order)}

        def later(s, t):
            if cyc_of[t] != ci:
                return cyc_of[t] > ci
            return pos[t] > pos[s]

        for v in c_order:
            targets = [self.dst[a] for a in self.outs[v]]
            if v == closing_src:
                targets.append(closing_dst)
            ups = [t for t in targets if later(v, t)]
            a, b = len(ups), len(targets) - len(ups)
            if a + b > 3 or b > 2 or (a, b) == (3, 0):
                return False
            if (a, b) == (1, 2) and cyc_of[ups[0]] != ci:
                return False
        return True

    def _try_remove_copy(self, c) -> int | None:
        for i, v in enumerate(c):
            for a in list(self.outs[v]):
                w = self.dst[a]
                others = [b for b in self.between[_key(v, w)] if b != a and b not in self.removed]
                if not others:
                    continue
                if a in self.real:
                    spare = [b for b in others if b not in self.real]
                    if not spare:
                        continue
                    self.real[spare[0]] = self.real.pop(a)
                self.outs[v].remove(a)
                self.removed.add(a)
                return i
        return None

    def order(self, c: list[int], cyc_of, ci):
        """Returns (order, reverse_closing, reoriented arc or None)."""
        k = len(c)
        if k == 1:
            return c, False, None
        i = self._try_remove_copy(c)
        if i is not None:
            return self._check(c[i:] + c[:i], False, None, cyc_of, ci)
        kind = {}
        for v in c:
            kind[v] = [("back" if cyc_of[self.dst[a]] < ci else "fwd" if cyc_of[self.dst[a]] > ci else "chord") for a in self.outs[v]]
        for i, v in enumerate(c):
            if "back" in kind[v]:
                return self._check(c[i:] + c[:i], False, None, cyc_of, ci)
        fwd = [kind[v].count("fwd") for v in c]
        i = max(range(k), key=fwd.__getitem__)
        order = c[i + 1 :] + c[: i + 1]
        if fwd[i] == 2:
            return self._check(order, True, None, cyc_of, ci)
        s = order[0]
        members = set(c)
        for a in self.outs[s]:
            vj = self.dst[a]
            if vj not in members:
                continue
            nxt = [b for b in self.outs[vj] if self.dst[b] in members and self.dst[b] != s]
            if not nxt:
                continue
            vj2 = self.dst[nxt[0]]
            if order.index(vj) > order.index(vj2):
                order = [order[0]] + order[:0:-1]
            self._flip(a)
            if self._valid(order, False, cyc_of, ci):
                return order, False, a
            self._flip(a)
            break
        return self._search(c, cyc_of, ci)

    def _flip(self, a) -> None:
        s, t = self.src[a], self.dst[a]
        self.outs[s].remove(a)
        self.outs[t].append(a)
        self.src[a], self.dst[a] = t, s

    def _closing_ends(self, order, reverse):
        first, last = order[0], order[-1]
        return (last, first) if reverse else (first, last)

    def _valid(self, order, reverse, cyc_of, ci) -> bool:
        s, t = self._closing_ends(order, reverse)
        return self._ok(order, s, t, cyc_of, ci)

    def _check(self, order, reverse, arc, cyc_of, ci):
        if self._valid(order, reverse, cyc_of, ci):
            return order, reverse, arc
        return self._search(order, cyc_of, ci)

    def _search(self, c, cyc_of, ci):
        """Exhaustive fallback over rotations, directions and one reorientation."""
        k = len(c)
        members = set(c)
        inner = [a for v in c for a in self.outs[v] if self.dst[a] in members]
        for r in range(k):
            for seq in (c[r:] + c[:r], (c[r:] + c[:r])[::-1]):
                for reverse in (False, True):
                    if self._valid(seq, reverse, cyc_of, ci):
                        return seq, reverse, None
                for a in inner:
                    self._flip(a)
                    if self._valid(seq, False, cyc_of, ci):
                        return seq, False, a
                    self._flip(a)
        raise InvariantViolated(f"no internal order of the cycle through {c[0]} avoids a (3,0) label")


def order_cycles_y(tfd: TwoFactorDecomposition, real: dict[int, int] | None = None) -> YOrder:
    """Cycles of F1 stacked in y, each rotated (and one arc flipped) so no vertex is (3,0)."""
    aug = tfd.augmented
    if real is None:
        real = {a: tfd.origin[a] for a in range(len(tfd.origin)) if tfd.origin[a] >= 0}
    real = dict(real)
    f1 = 0
    crit_arcs = [a for i in range(1, tfd.d) for a in tfd.factors[i]]
    src = {a: aug.edges[a][0] for a in crit_arcs}
    dst = {a: aug.edges[a][1] for a in crit_arcs}
    outs: dict[int, list[int]] = defaultdict(list)
    for a in crit_arcs:
        outs[src[a]].append(a)
    between = defaultdict(list)
    for a, (u, v) in enumerate(aug.edges):
        between[_key(u, v)].append(a)
    cycles = tfd.cycles(f1)
    cyc_of = {v: i for i, c in enumerate(cycles) for v in c}
    succ1 = tfd.succ(f1)
    removed: set[int] = set()
    orderer = _CycleOrderer(aug, tfd.factors[f1], src, dst, outs, between, real, removed)
    ordered, closing, horizontal, reoriented = [], {}, [], []
    orient = {}
    for ci, c in enumerate(cycles):
        order, reverse, flipped = orderer.order(c, cyc_of, ci)
        if flipped is not None:
            reoriented.append(flipped)
        ordered.append(order)
        if len(order) < 2:
            continue
        arcs = [succ1[v] for v in c]
        pool = defaultdict(list)
        for a in arcs:
            pool[_key(*aug.edges[a])].append(a)
        for lo, hi in zip(order, order[1:]):
            horizontal.append((pool[_key(lo, hi)].pop(), lo, hi))
        (last_arc,) = [a for lst in pool.values() for a in lst]
        closing[ci] = last_arc
        s, t = (order[-1], order[0]) if reverse else (order[0], order[-1])
        orient[last_arc] = (s, t)
    for a in crit_arcs:
        orient[a] = (src[a], dst[a])
    rank = {v: i for i, v in enumerate(v for c in ordered for v in c)}
    return YOrder(aug.n, ordered, rank, orient, horizontal, closing, removed, reoriented, real)


# ------------------------------------------------------------------ tags


@dataclass
class CriticalStructure:
    """Per original vertex: outgoing critical edges split by y direction.

    ``ups[v]`` / ``downs[v]`` hold (edge id, other end); edge ids are those of
    the input graph. ``tag[v]`` is (len(ups), len(downs)).
    """

    n: int
    yrank: dict[int, int]
    ups: dict[int, list[tuple[int, int]]]
    downs: dict[int, list[tuple[int, int]]]
    in_matching: set[int]
    horizontal: list[tuple[int, int, int]]  # (edge, lower, upper)
    cycle_of: dict[int, int]
    tag: dict[int, tuple[int, int]] = field(default_factory=dict)

    def src_dst(self) -> dict[int, tuple[int, int]]:
        out = {}
        for v in range(self.n):
            for e, w in self.ups[v] + self.downs[v]:
                out[e] = (v, w)
        return out


def compute_tags(yo: YOrder, n: int, hmap: list[int], matching_edges: dict[int, tuple[int, int]]) -> CriticalStructure:
    """Drop fake and removed arcs, orient M upward in y and tally the tags."""
    order = sorted(range(n), key=yo.rank.__getitem__)
    yrank = {v: i for i, v in enumerate(order)}
    ups = {v: [] for v in range(n)}
    downs = {v: [] for v in range(n)}
    for a, (s, t) in yo.orient.items():
        if a in yo.removed or a not in yo.real:
            continue
        e = hmap[yo.real[a]]
        (ups if yrank[t] > yrank[s] else downs)[s].append((e, t))
    for e, (u, v) in matching_edges.items():
        lo, hi = (u, v) if yrank[u] < yrank[v] else (v, u)
        ups[lo].append((e, hi))
    horizontal = []
    for a, lo, hi in yo.horizontal:
        if a in yo.real:
            if abs(yrank[lo] - yrank[hi]) != 1:
                raise InvariantViolated(f"F1 edge {lo}-{hi} is not y-consecutive")
            horizontal.append((hmap[yo.real[a]], lo, hi))
    cycle_of = {v: i for i, c in enumerate(yo.cycles) for v in c if v < n}
    cs = CriticalStructure(n, yrank, ups, downs, set(matching_edges), horizontal, cycle_of)
    four = defaultdict(int)
    for v in range(n):
        a, b = len(ups[v]), len(downs[v])
        cs.tag[v] = (a, b)
        if a > 3 or b > 2 or a + b > 4:
            raise InvariantViolated(f"vertex {v} has tag [{a},{b}]")
        if a + b == 4:
            four[cycle_of[v]] += 1
            if four[cycle_of[v]] > 1:
                raise InvariantViolated(f"cycle of {v} has two vertices with four critical edges")
    return cs


# ------------------------------------------------------------------ x order


@dataclass
class EdgeTypeMap:
    """Edge id -> "h" (horizontal type-2), "v" (vertical type-2) or "1"."""

    kind: dict[int, str]
    partner: dict[int, int]


class _OrderList:
    """Doubly linked list with integer labels for O(1) order comparisons."""

    GAP = 1 << 20

    def __init__(self):
        self.prev: dict[int, int | None] = {}
        self.next: dict[int, int | None] = {}
        self.label: dict[int, int] = {}
        self.head = self.tail = None

    def append(self, v: int) -> None:
        self.prev[v], self.next[v] = self.tail, None
        if self.tail is None:
            self.head = v
            self.label[v] = 0
        else:
            self.next[self.tail] = v
            self.label[v] = self.label[self.tail] + self.GAP
        self.tail = v

    def insert_after(self, v: int, anchor: int) -> None:
        nxt = self.next[anchor]
        if nxt is None:
            self.append(v)
            return
        self.prev[v], self.next[v] = anchor, nxt
        self.next[anchor] = v
        self.prev[nxt] = v
        lo, hi = self.label[anchor], self.label[nxt]
        if hi - lo < 2:
            self._relabel()
        else:
            self.label[v] = (lo + hi) // 2

    def insert_before(self, v: int, anchor: int) -> None:
        prv = self.prev[anchor]
        if prv is None:
            self.prev[v], self.next[v] = None, anchor
            self.prev[anchor] = v
            self.head = v
            self.label[v] = self.label[anchor] - self.GAP
        else:
            self.insert_after(v, prv)

    def _relabel(self) -> None:
        v, i = self.head, 0
        while v is not None:
            self.label[v] = i * self.GAP
            v, i = self.next[v], i + 1

    def items(self) -> list[int]:
        out, v = [], self.head
        while v is not None:
            out.append(v)
            v = self.next[v]
        return out


def compute_x_order(cs: CriticalStructure) -> tuple[dict[int, int], EdgeTypeMap]:
    """Reverse-y sweep placing each vertex relative to its upper critical neighbours."""
    kind = {e: "h" for e, _, _ in cs.horizontal}
    partner: dict[int, int] = {}
    lst = _OrderList()
    for v in sorted(range(cs.n), key=cs.yrank.__getitem__, reverse=True):
        a_, b_ = cs.tag[v]
        if a_ == 3:
            a, b, c = sorted((w for _, w in cs.ups[v]), key=lst.label.__getitem__)
            p = partner.get(b)
            if p is not None and lst.label[p] < lst.label[b]:
                lst.insert_after(v, b)
            else:
                lst.insert_before(v, b)
        elif (a_, b_) == (2, 2):
            other = [(e, w) for e, w in cs.ups[v] if e not in cs.in_matching]
            if len(other) != 1:
                raise InvariantViolated(f"[2,2] vertex {v} needs exactly one matching edge upward")
            e, b = other[0]
            if b in partner:
                raise InvariantViolated(f"{b} already has a vertical partner")
            kind[e] = "v"
            partner[v], partner[b] = b, v
            lst.insert_before(v, b)
        else:
            lst.append(v)
    seq = lst.items()
    xrank = {v: i for i, v in enumerate(seq)}
    for v, w in partner.items():
        if abs(xrank[v] - xrank[w]) != 1:
            raise InvariantViolated(f"vertical partners {v}, {w} are not x-consecutive")
    for v in range(cs.n):
        for e, _ in cs.ups[v] + cs.downs[v]:
            kind.setdefault(e, "1")
    return xrank, EdgeTypeMap(kind, partner)


# ------------------------------------------------------------------ routing

_PORT_OK = {
    "N": lambda dx, dy: dy > 0,
    "S": lambda dx, dy: dy < 0,
    "E": lambda dx, dy: dx > 0,
    "W": lambda dx, dy: dx < 0,
}


def assign_ports(cs: CriticalStructure, xrank, etm: EdgeTypeMap) -> dict[int, str]:
    """Edge id -> port at its source; N/S serve targets above/below, E/W right/left."""
    ports = {}
    for v in range(cs.n):
        out = [(e, w) for e, w in cs.ups[v] + cs.downs[v] if etm.kind[e] == "1"]
        found = None
        for perm in itertools.permutations("NSEW", len(out)):
            if all(_PORT_OK[p](xrank[w] - xrank[v], cs.yrank[w] - cs.yrank[v]) for p, (e, w) in zip(perm, out)):
                found = perm
                break
        if found is None:
            raise PortExhausted(f"vertex {v} cannot serve tag {cs.tag[v]} with its four ports")
        for p, (e, _) in zip(found, out):
            ports[e] = p
    return ports


def route_boxes(cs: CriticalStructure, xrank, etm: EdgeTypeMap) -> Drawing:
    """Place vertices on the 8-grid and route every edge with exactly two bends."""
    # box centres at 8i + 4 keep the whole drawing inside [0, 8n] x [0, 8n]
    X = {v: PITCH * xrank[v] + HALF for v in range(cs.n)}
    Y = {v: PITCH * cs.yrank[v] + HALF for v in range(cs.n)}
    pos = {v: (X[v], Y[v]) for v in range(cs.n)}
    ports = assign_ports(cs, xrank, etm)
    sd = cs.src_dst()
    requests = defaultdict(list)  # (target, side) -> [(sort key, edge)]
    for e, p in ports.items():
        u, v = sd[e]
        if p in "NS":
            side = "L" if X[u] < X[v] else "R"
            requests[(v, side)].append((Y[u], e))
        else:
            side = "B" if Y[u] < Y[v] else "T"
            requests[(v, side)].append((X[u], e))
    slot = {}
    for (v, side), reqs in requests.items():
        if len(reqs) > len(SLOT_PREFERENCE):
            raise BendSlotExhausted(f"{len(reqs)} edges enter side {side} of the box of {v}")
        offsets = sorted(SLOT_PREFERENCE[: len(reqs)])
        for off, (_, e) in zip(offsets, sorted(reqs)):
            slot[e] = off
    edges, bends = {}, {}
    for e, p in ports.items():
        u, v = sd[e]
        s = slot[e]
        if p in "NS":
            bx = X[v] - HALF if X[u] < X[v] else X[v] + HALF
            p1, p2 = (X[u], Y[v] + s), (bx, Y[v] + s)
        else:
            by = Y[v] - HALF if Y[u] < Y[v] else Y[v] + HALF
            p1, p2 = (X[v] + s, Y[u]), (X[v] + s, by)
        edges[e] = (u, v)
        bends[e] = [p1, p2]
    for e, lo, hi in cs.horizontal:
        sgn = 1 if X[hi] > X[lo] else -1
        edges[e] = (lo, hi)
        bends[e] = [(X[lo] + 3 * sgn, Y[lo] + HALF), (X[hi] - 3 * sgn, Y[hi] - HALF)]
    for v, b in etm.partner.items():
        if cs.yrank[b] < cs.yrank[v]:
            continue
        (e,) = [e for e, w in cs.ups[v] if w == b and etm.kind[e] == "v"]
        sgn = 1 if X[b] > X[v] else -1
        edges[e] = (v, b)
        bends[e] = [(X[v] + HALF * sgn, Y[v] + 3), (X[b] - HALF * sgn, Y[b] - 3)]
    return Drawing(pos, edges, bends, 1)


# ------------------------------------------------------------------ driver


def choose_matching(g: Graph) -> list[int]:
    """A matching covering every degree-7 vertex (maximum weight), or BadDecomposition."""
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    heavy = {v for v in range(g.n) if deg[v] > 6}
    if not heavy:
        return []
    G = nx.Graph()
    for e, (u, v) in enumerate(g.edges):
        w = (u in heavy) + (v in heavy)
        if w:
            G.add_edge(u, v, weight=w, eid=e)
    mate = nx.max_weight_matching(G)
    chosen = [G.edges[u, v]["eid"] for u, v in mate]
    covered = {x for e in chosen for x in g.edges[e]}
    if not heavy <= covered:
        raise BadDecomposition("no matching covers every degree-7 vertex")
    return sorted(chosen)


def _split(g: Graph, matching) -> tuple[Graph, list[int], dict[int, tuple[int, int]]]:
    mset = set(matching)
    if len(mset) != len(list(matching)):
        raise BadDecomposition("matching lists an edge twice")
    seen = set()
    for e in mset:
        if not 0 <= e < g.m:
            raise BadDecomposition(f"matching edge {e} does not exist")
        for x in g.edges[e]:
            if x in seen:
                raise BadDecomposition(f"matching edges share vertex {x}")
            seen.add(x)
    hmap = [e for e in range(g.m) if e not in mset]
    h = Graph(g.n, tuple(g.edges[e] for e in hmap))
    deg = [0] * g.n
    for u, v in h.edges:
        deg[u] += 1
        deg[v] += 1
    if any(d > 6 for d in deg):
        raise BadDecomposition("removing the matching leaves a vertex of degree above 6")
    return h, hmap, {e: g.edges[e] for e in mset}


def _trivial_yorder(n: int) -> YOrder:
    return YOrder(n, [[v] for v in range(n)], {v: v for v in range(n)}, {}, [], {}, set(), [], {})


def draw_2bend_deg7(g: Graph, matching=None) -> Drawing:
    """2-bend RAC drawing on an 8n x 8n grid; ``matching`` defaults to one covering the degree-7 vertices."""
    check_degree(g, 7)
    if matching is None:
        matching = choose_matching(g)
    h, hmap, medges = _split(g, matching)
    if h.m == 0:
        yo = _trivial_yorder(g.n)
    else:
        yo = order_cycles_y(augment_and_decompose(h, min_factors=3))
    cs = compute_tags(yo, g.n, hmap, medges)
    xrank, etm = compute_x_order(cs)
    return route_boxes(cs, xrank, etm)
