"""Straight-line RAC drawings of 3-edge-colored graphs of maximum degree 3.

Color class 0 (M1) is drawn horizontally, class 2 (M3) vertically and class 1
(M2) crossing-free.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field

from .drawing import Drawing, tile
from .verify import Constraints
from .graph import EdgeColoring, Graph, GraphError, ImproperColoring, VertexOrder, check_degree, degree_profile

M1, M2, M3 = 0, 1, 2


class OddCycleFound(GraphError):
    pass


class AuxDisconnected(RuntimeError):
    pass


class EstarPreconditionViolated(RuntimeError):
    pass


@dataclass
class Component:
    axis: str  # "y" for M1 ∪ M2, "x" for M2 ∪ M3
    kind: str  # "path" or "cycle"
    walk: list[int]  # natural walk order (path from one end, cycle from any vertex)
    min_id: int = -1

    def __post_init__(self) -> None:
        if self.min_id < 0:
            self.min_id = min(self.walk)


@dataclass
class ComponentForest:
    hy: list[Component]
    hx: list[Component]
    comp_y: list[int]
    comp_x: list[int]
    aux_edges: set[tuple[int, int]]
    bfs_order: list[tuple[str, int]]
    origin: int


@dataclass
class OrderPair:
    order_y: VertexOrder
    order_x: VertexOrder
    estar: int | None
    origin: int
    closing_y: set[int] = field(default_factory=set)
    closing_x: set[int] = field(default_factory=set)


class _Colored:
    """Per-vertex neighbor table by color for a graph with a proper coloring."""

    def __init__(self, g: Graph, classes) -> None:
        self.g = g
        self.classes = classes
        if len(classes) != g.m:
            raise ImproperColoring(f"{len(classes)} colors for {g.m} edges")
        # flat tables indexed 3 * v + color; -1 marks a missing color
        nbr = array("l", [-1]) * (3 * g.n)
        eid = array("l", [-1]) * (3 * g.n)
        for e, (u, v) in enumerate(g.edges):
            c = classes[e]
            if c not in (0, 1, 2):
                raise ImproperColoring(f"color {c} outside 0..2")
            iu, iv = 3 * u + c, 3 * v + c
            if nbr[iu] >= 0 or nbr[iv] >= 0:
                raise ImproperColoring(f"color {c} repeated at edge {e}")
            nbr[iu] = v
            nbr[iv] = u
            eid[iu] = e
            eid[iv] = e
        self.nbr = nbr
        self.eid = eid

    def at(self, v: int, c: int) -> int | None:
        w = self.nbr[3 * v + c]
        return None if w < 0 else w

    def edge_at(self, v: int, c: int) -> int | None:
        e = self.eid[3 * v + c]
        return None if e < 0 else e


def _components(cg: _Colored, colors: tuple[int, int], axis: str) -> tuple[list[Component], list[int]]:
    n = cg.g.n
    comp = array("l", [-1]) * n
    out: list[Component] = []
    a, b = colors
    nbr = cg.nbr

    def walk_from(s, c):
        k = len(out)
        seq = [s]
        comp[s] = k
        lo = s
        v = s
        while True:
            w = nbr[3 * v + c]
            if w < 0 or comp[w] == k:
                return seq, lo
            comp[w] = k
            seq.append(w)
            if w < lo:
                lo = w
            v = w
            c = b if c == a else a

    for s in range(n):
        if comp[s] < 0 and (nbr[3 * s + a] < 0 or nbr[3 * s + b] < 0):
            seq, lo = walk_from(s, a if nbr[3 * s + a] >= 0 else b)
            out.append(Component(axis, "path", seq, lo))
    for s in range(n):
        if comp[s] < 0:
            seq, lo = walk_from(s, a)
            if len(seq) % 2:
                raise OddCycleFound(f"odd cycle in H_{axis}: improper coloring")
            out.append(Component(axis, "cycle", seq, lo))
    return out, comp


def build_subgraphs(g: Graph, col: EdgeColoring) -> tuple[list[Component], list[Component]]:
    """Components of H_y (M1 ∪ M2) and H_x (M2 ∪ M3)."""
    cg = _Colored(g, col.classes)
    hy, _ = _components(cg, (M1, M2), "y")
    hx, _ = _components(cg, (M2, M3), "x")
    return hy, hx


def _choose_origin(hy: list[Component], cg: _Colored) -> int:
    """Lowest H_y path end; failing that, the lowest vertex without an M3 edge.

    When the first H_y component is a cycle, its closing edge at the origin is
    only safe if the origin also comes first in the x order. A vertex missing
    M3 ends an H_x path through its M2 edge, which guarantees that.
    """
    ends = [v for c in hy if c.kind == "path" for v in (c.walk[0], c.walk[-1])]
    if ends:
        return min(ends)
    nbr = cg.nbr
    return next((v for v in range(cg.g.n) if nbr[3 * v + M3] < 0), 0)


def build_auxiliary(g: Graph, col: EdgeColoring, origin: int | None = None) -> ComponentForest:
    cg = _Colored(g, col.classes)
    return _build_auxiliary(cg, origin)


def _build_auxiliary(cg: _Colored, origin: int | None) -> ComponentForest:
    hy, comp_y = _components(cg, (M1, M2), "y")
    hx, comp_x = _components(cg, (M2, M3), "x")
    if origin is None:
        origin = _choose_origin(hy, cg)
    aux = set()
    for v in range(cg.g.n):
        aux.add((comp_y[v], comp_x[v]))
    adj_y: list[list[int]] = [[] for _ in hy]
    adj_x: list[list[int]] = [[] for _ in hx]
    for i, j in aux:
        adj_y[i].append(j)
        adj_x[j].append(i)
    for lst in adj_y:
        lst.sort(key=lambda j: hx[j].min_id)
    for lst in adj_x:
        lst.sort(key=lambda i: hy[i].min_id)

    c0, c1 = comp_y[origin], comp_x[origin]
    seen_y = [False] * len(hy)
    seen_x = [False] * len(hx)
    seen_y[c0] = True
    seen_x[c1] = True
    order: list[tuple[str, int]] = [("y", c0), ("x", c1)]
    queue = deque(order)
    while queue:
        side, i = queue.popleft()
        if side == "y":
            for j in adj_y[i]:
                if not seen_x[j]:
                    seen_x[j] = True
                    order.append(("x", j))
                    queue.append(("x", j))
        else:
            for j in adj_x[i]:
                if not seen_y[j]:
                    seen_y[j] = True
                    order.append(("y", j))
                    queue.append(("y", j))
    if len(order) != len(hy) + len(hx):
        raise AuxDisconnected("auxiliary component graph is disconnected")
    return ComponentForest(hy, hx, comp_y, comp_x, aux, order, origin)


def _cycle_walk(comp: Component, start: int, first_nbr: int) -> list[int]:
    """Cyclic walk of ``comp`` from ``start`` whose second vertex is ``first_nbr``."""
    w = comp.walk
    L = len(w)
    i = w.index(start)
    if w[(i + 1) % L] == first_nbr:
        return [w[(i + k) % L] for k in range(L)]
    return [w[(i - k) % L] for k in range(L)]


def compute_orders(
    cg_or_graph,
    forest: ComponentForest,
    col: EdgeColoring | None = None,
    path_start: dict[int, int] | None = None,
    defer_x: int | None = None,
) -> OrderPair:
    """Walk the components in BFS order and concatenate their walks.

    ``path_start`` maps a vertex to the endpoint its path component must start
    from. The H_x component containing ``defer_x`` is ranked after all others.
    """
    path_start = path_start or {}
    cg = cg_or_graph if isinstance(cg_or_graph, _Colored) else _Colored(cg_or_graph, col.classes)
    n = cg.g.n
    rank_y = array("l", [-1]) * n
    rank_x = array("l", [-1]) * n
    seq_y: list[int] = []
    seq_x: list[int] = []
    blocks_y: list[tuple[int, int]] = []
    blocks_x: list[tuple[int, int]] = []
    closing_y: set[int] = set()
    closing_x: set[int] = set()
    origin = forest.origin
    deferred: list[int] = []
    defer_comp = forest.comp_x[defer_x] if defer_x is not None else -1

    for step, (side, i) in enumerate(forest.bfs_order):
        comp = forest.hy[i] if side == "y" else forest.hx[i]
        other_rank = rank_x if side == "y" else rank_y
        if comp.kind == "path":
            ends = [comp.walk[0], comp.walk[-1]]
            forced = [path_start[v] for v in comp.walk if v in path_start]
            if forced:
                start = forced[0]
            elif step == 0:
                start = origin
            else:
                ranked = [v for v in ends if other_rank[v] >= 0]
                start = min(ranked, key=lambda v: other_rank[v]) if ranked else min(ends)
            seq = comp.walk if comp.walk[0] == start else comp.walk[::-1]
            if seq[0] != start:
                raise GraphError("path walk must start at an endpoint")
        elif side == "y":
            if step == 0:
                v = origin
            else:
                v = min((u for u in comp.walk if rank_x[u] >= 0), key=lambda u: rank_x[u])
            seq = _cycle_walk(comp, v, cg.at(v, M1))
            closing_y.add(cg.edge_at(seq[0], M2))
        else:
            v = min((u for u in comp.walk if rank_y[u] >= 0), key=lambda u: rank_y[u])
            seq = _cycle_walk(comp, v, cg.at(v, M3))[::-1]
            closing_x.add(cg.edge_at(seq[-1], M2))
        if side == "y":
            blocks_y.append((len(seq_y), len(seq_y) + len(seq) - 1))
            for u in seq:
                rank_y[u] = len(seq_y)
                seq_y.append(u)
        elif i == defer_comp:
            deferred = seq
            for j, u in enumerate(seq):
                rank_x[u] = n + j
        else:
            blocks_x.append((len(seq_x), len(seq_x) + len(seq) - 1))
            for u in seq:
                rank_x[u] = len(seq_x)
                seq_x.append(u)
    if deferred:
        blocks_x.append((len(seq_x), len(seq_x) + len(deferred) - 1))
        seq_x.extend(deferred)

    both = closing_y & closing_x
    if len(both) > 1:
        raise GraphError("more than one M2 edge closes components in both orders")
    estar = next(iter(both)) if both else None
    if estar is not None and origin not in cg.g.edges[estar]:
        raise GraphError("double-closing edge is not incident to the origin")
    return OrderPair(
        VertexOrder(tuple(seq_y), tuple(blocks_y)),
        VertexOrder(tuple(seq_x), tuple(blocks_x)),
        estar,
        origin,
        closing_y,
        closing_x,
    )


def assign_coordinates(cg_or_graph, orders: OrderPair, col: EdgeColoring | None = None) -> Drawing:
    """Integer coordinates from the two orders (M1 shares y, M3 shares x)."""
    cg = cg_or_graph if isinstance(cg_or_graph, _Colored) else _Colored(cg_or_graph, col.classes)
    n = cg.g.n
    ys = array("l", [0]) * n
    xs = array("l", [0]) * n
    nbr = cg.nbr
    for seq, coord, same in ((orders.order_y.sequence, ys, M1), (orders.order_x.sequence, xs, M3)):
        cur = 1
        prev = None
        for v in seq:
            if prev is not None and nbr[3 * prev + same] != v:
                cur += 1
            coord[v] = cur
            prev = v
    positions = {v: (xs[v], ys[v]) for v in range(n)}
    return Drawing(positions, {e: uv for e, uv in enumerate(cg.g.edges)})


def place_estar(d: Drawing, orders: OrderPair, g: Graph) -> Drawing:
    """Move the origin down and the other end of e* left far enough to clear every other edge."""
    if orders.estar is None:
        return d
    u = orders.origin
    v = g.other(orders.estar, u)
    pos = d.positions
    if pos[u][1] != min(p[1] for p in pos.values()) or pos[v][0] != min(p[0] for p in pos.values()):
        raise EstarPreconditionViolated("origin not bottommost or its M2 neighbor not leftmost")
    out = d.copy()
    # any shift k with k * k > (x_u - 1)(y_v - 1) keeps e* out of the positive
    # quadrant; the larger coordinate extent always qualifies and is at most n
    k = max(max(p[0] for p in pos.values()), max(p[1] for p in pos.values()))
    out.positions[u] = (pos[u][0], pos[u][1] - k)
    out.positions[v] = (pos[v][0] - k, pos[v][1])
    return out


@dataclass
class Rac3Result:
    """Drawing plus the bookkeeping needed to audit it.

    ``relaxed`` lists edges of M1 or M3 that lost their axis slope when the
    endpoints of e* were displaced; they are crossing-free instead.
    """

    drawing: Drawing
    orders: list[OrderPair] = field(default_factory=list)
    estar: list[int] = field(default_factory=list)
    relaxed: list[int] = field(default_factory=list)
    closing_y: set[int] = field(default_factory=set)
    closing_x: set[int] = field(default_factory=set)
    estar_origin: dict[int, int] = field(default_factory=dict)


def _run_connected(cg: _Colored, origin: int | None) -> tuple[Drawing, OrderPair]:
    forest = _build_auxiliary(cg, origin)
    orders = compute_orders(cg, forest)
    d = assign_coordinates(cg, orders)
    return place_estar(d, orders, cg.g), orders


def _relaxed_edges(cg: _Colored, orders: OrderPair) -> list[int]:
    if orders.estar is None:
        return []
    u = orders.origin
    v = cg.g.other(orders.estar, u)
    return [e for e in (cg.edge_at(u, M1), cg.edge_at(v, M3)) if e is not None]


def _replace_degree_one(g: Graph, classes: list[int]) -> tuple[Graph, list[int]]:
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    edges = list(g.edges)
    classes = list(classes)
    n = g.n
    inc: dict[int, int] = {}
    for e, (u, v) in enumerate(g.edges):
        inc.setdefault(u, e)
        inc.setdefault(v, e)
    for v in range(g.n):
        if deg[v] != 1:
            continue
        a = classes[inc[v]]
        b, c = [k for k in (0, 1, 2) if k != a]
        t1, t2 = n, n + 1
        n += 2
        edges += [(v, t1), (v, t2), (t1, t2)]
        classes += [b, c, a]
    return Graph(n, tuple(edges)), classes


def rac3_layout(g: Graph, col: EdgeColoring | list[int], origin: int | None = None) -> Rac3Result:
    """Straight-line RAC drawing of a 3-edge-colored graph of maximum degree 3.

    Degree-1 vertices are padded with a hidden triangle. Disconnected inputs are
    drawn per component and tiled left to right.
    """
    classes = list(col.classes if isinstance(col, EdgeColoring) else col)
    check_degree(g, 3)
    cg = _Colored(g, classes)
    if g.n == 0:
        return Rac3Result(Drawing({}, {}))
    _, deg = degree_profile(g)
    if 1 not in deg:
        try:
            d, orders = _run_connected(cg, origin)
        except AuxDisconnected:
            pass
        else:
            est = [orders.estar] if orders.estar is not None else []
            return Rac3Result(
                d,
                [orders],
                est,
                _relaxed_edges(cg, orders),
                set(orders.closing_y),
                set(orders.closing_x),
                {e: orders.origin for e in est},
            )

    work, wclasses = _replace_degree_one(g, classes)
    parts, result = [], Rac3Result(Drawing({}, {}))
    for comp in work.components():
        sub, vmap, emap = work.subgraph(comp)
        if sub.n == 1:
            parts.append(Drawing({vmap[0]: (1, 1)}, {}))
            continue
        scg = _Colored(sub, [wclasses[e] for e in emap])
        local_origin = comp.index(origin) if origin is not None and origin in comp else None
        d, orders = _run_connected(scg, local_origin)
        result.orders.append(orders)
        if orders.estar is not None and emap[orders.estar] < g.m:
            result.estar.append(emap[orders.estar])
            result.estar_origin[emap[orders.estar]] = vmap[orders.origin]
        result.closing_y |= {emap[e] for e in orders.closing_y if emap[e] < g.m}
        result.closing_x |= {emap[e] for e in orders.closing_x if emap[e] < g.m}
        result.relaxed += [emap[e] for e in _relaxed_edges(scg, orders) if emap[e] < g.m]
        parts.append(
            Drawing(
                {vmap[v]: p for v, p in d.positions.items() if vmap[v] < g.n},
                {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in d.edges.items() if emap[e] < g.m},
            )
        )
    # straight-line parts on disjoint closed x-ranges cannot interact, so one
    # unit apart is enough and keeps the width under 2n
    result.drawing = parts[0] if len(parts) == 1 else tile(parts, gap=1)[0]
    return result


def draw_rac3(g: Graph, col: EdgeColoring | list[int], origin: int | None = None) -> Drawing:
    return rac3_layout(g, col, origin).drawing


def rac3_constraints(g: Graph, col: EdgeColoring | list[int], result: Rac3Result) -> Constraints:
    """Slope demands for a rac3 drawing: M1 horizontal, M3 vertical, M2 crossing-free, no bends."""
    classes = col.classes if isinstance(col, EdgeColoring) else col
    relaxed = set(result.relaxed)
    n = g.n
    return Constraints(
        max_bends=0,
        max_width=2 * n,
        max_height=2 * n,
        horizontal=frozenset(e for e, k in enumerate(classes) if k == M1 and e not in relaxed),
        vertical=frozenset(e for e, k in enumerate(classes) if k == M3 and e not in relaxed),
        crossing_free=frozenset(e for e, k in enumerate(classes) if k == M2 or e in relaxed),
    )
