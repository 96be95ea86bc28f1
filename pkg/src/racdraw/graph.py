"""Graph, coloring and vertex-order types shared by all drawing algorithms."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    pass


class ImproperColoring(GraphError):
    pass


class DegreeTooHigh(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected (multi)graph on vertices ``0..n-1``.

    Edges are identified by their index in ``edges``; parallel copies are
    therefore distinguishable. ``fake`` holds the ids of edges added by an
    augmentation step, which never reach a final drawing.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    fake: frozenset[int] = frozenset()
    multigraph: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "fake", frozenset(self.fake))
        if self.n < 0:
            raise GraphError("negative vertex count")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen and not self.multigraph:
                raise GraphError(f"parallel edge {key} in a simple graph")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def real_edges(self) -> list[int]:
        return [i for i in range(self.m) if i not in self.fake]

    def incidence(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return inc

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def other(self, e: int, u: int) -> int:
        a, b = self.edges[e]
        return b if a == u else a

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        comp = [-1] * self.n
        out = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            stack, members = [s], [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if comp[w] < 0:
                        comp[w] = len(out)
                        stack.append(w)
                        members.append(w)
            out.append(sorted(members))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph(self, vertices: Sequence[int]) -> tuple["Graph", list[int], list[int]]:
        """Induced subgraph on ``vertices``; returns (graph, vertex map, edge map)."""
        index = {v: i for i, v in enumerate(vertices)}
        edges, emap = [], []
        for i, (u, v) in enumerate(self.edges):
            if u in index and v in index:
                edges.append((index[u], index[v]))
                emap.append(i)
        fake = {j for j, i in enumerate(emap) if i in self.fake}
        return Graph(len(vertices), tuple(edges), frozenset(fake), self.multigraph), list(vertices), emap


def degree_profile(g: Graph) -> tuple[int, list[int]]:
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return (max(deg) if deg else 0), deg


def check_degree(g: Graph, cap: int) -> None:
    top, _ = degree_profile(g)
    if top > cap:
        raise DegreeTooHigh(f"maximum degree {top} exceeds {cap}")


@dataclass(frozen=True)
class EdgeColoring:
    """Proper edge coloring: ``classes[e]`` is the class of edge ``e``."""

    classes: tuple[int, ...]
    k: int

    def matching(self, c: int) -> list[int]:
        return [e for e, cls in enumerate(self.classes) if cls == c]


def make_coloring(g: Graph, classes: Iterable[int], k: int | None = None) -> EdgeColoring:
    classes = tuple(int(c) for c in classes)
    if len(classes) != g.m:
        raise ImproperColoring(f"{len(classes)} colors for {g.m} edges")
    if k is None:
        k = max(classes) + 1 if classes else 0
    if any(c < 0 or c >= k for c in classes):
        raise ImproperColoring("color outside range")
    used: dict[tuple[int, int], int] = {}
    for e, ((u, v), c) in enumerate(zip(g.edges, classes)):
        for w in (u, v):
            if (w, c) in used:
                raise ImproperColoring(f"color {c} repeated at vertex {w} (edges {used[w, c]} and {e})")
            used[w, c] = e
    return EdgeColoring(classes, k)


@dataclass(frozen=True)
class VertexOrder:
    """Total order made of contiguous cycle blocks.

    ``blocks`` lists ``(start, end)`` rank ranges (inclusive); the closing edge of
    a block joins ``sequence[start]`` and ``sequence[end]``.
    """

    sequence: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...] = ()
    rank: dict[int, int] = field(default_factory=dict, compare=False)
    block_of: dict[int, int] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        seq = tuple(self.sequence)
        object.__setattr__(self, "sequence", seq)
        if not self.blocks:
            object.__setattr__(self, "blocks", ((0, len(seq) - 1),) if seq else ())
        object.__setattr__(self, "rank", {v: i for i, v in enumerate(seq)})
        if len(self.rank) != len(seq):
            raise GraphError("vertex repeated in order")
        bo = {}
        for b, (s, e) in enumerate(self.blocks):
            for i in range(s, e + 1):
                bo[seq[i]] = b
        object.__setattr__(self, "block_of", bo)

    def closing_pair(self, b: int) -> tuple[int, int]:
        s, e = self.blocks[b]
        return self.sequence[s], self.sequence[e]


def classify_nontree_edge(order: VertexOrder, u: int, v: int) -> str:
    """Classify ``{u, v}`` relative to the cycle blocks of ``order``.

    Returns ``"closing"``, ``"cycle"`` (consecutive inside a block), ``"chord"``,
    ``"forward"`` (u precedes v, different blocks) or ``"backward"``.
    """
    if u not in order.rank or v not in order.rank:
        raise GraphError(f"edge ({u}, {v}) has an unranked endpoint")
    bu, bv = order.block_of[u], order.block_of[v]
    if bu != bv:
        return "forward" if order.rank[u] < order.rank[v] else "backward"
    s, e = order.blocks[bu]
    ru, rv = sorted((order.rank[u], order.rank[v]))
    if (ru, rv) == (s, e) and e - s >= 2:
        return "closing"
    if rv - ru == 1:
        return "cycle"
    return "chord"


def directed_adjacency(n: int, arcs: Iterable[tuple[int, int]]) -> tuple[dict, dict]:
    succ: dict[int, list[int]] = defaultdict(list)
    pred: dict[int, list[int]] = defaultdict(list)
    for u, v in arcs:
        succ[u].append(v)
        pred[v].append(u)
    return succ, pred
