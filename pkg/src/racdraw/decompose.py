"""Combinatorial substrate: directed 2-factors, edge colorings, perfect matchings
and the four-matching decomposition of bridgeless cubic graphs."""

from __future__ import annotations

import heapq
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .graph import EdgeColoring, Graph, GraphError, degree_profile, make_coloring


class SearchBudgetExceeded(RuntimeError):
    pass


class NoPerfectMatching(GraphError):
    pass


class NotCubic(GraphError):
    pass


class Bridged(GraphError):
    pass


# ---------------------------------------------------------------------------
# Directed 2-factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoFactorDecomposition:
    """``augmented`` holds arcs as ``(tail, head)``; ``factors[i]`` lists arc ids.

    ``n_original`` vertices come from the input graph. Arc ``i < len(origin)``
    with ``origin[i] >= 0`` is the input edge ``origin[i]``; every other arc is
    fake. Vertices ``>= n_original`` belong to padding gadgets and are fake too.
    """

    augmented: Graph
    factors: tuple[tuple[int, ...], ...]
    origin: tuple[int, ...]
    n_original: int

    @property
    def d(self) -> int:
        return len(self.factors)

    @property
    def fake_edges(self) -> frozenset[int]:
        return self.augmented.fake

    def succ(self, i: int) -> dict[int, int]:
        """vertex -> arc id leaving it in factor ``i``."""
        return {self.augmented.edges[a][0]: a for a in self.factors[i]}

    def pred(self, i: int) -> dict[int, int]:
        return {self.augmented.edges[a][1]: a for a in self.factors[i]}

    def cycles(self, i: int) -> list[list[int]]:
        """Vertex sequences of the directed cycles of factor ``i``."""
        succ = self.succ(i)
        seen = set()
        out = []
        for s in range(self.augmented.n):
            if s in seen:
                continue
            cyc = []
            v = s
            while v not in seen:
                seen.add(v)
                cyc.append(v)
                v = self.augmented.edges[succ[v]][1]
            out.append(cyc)
        return out


def _euler_circuits(n: int, edges: list[tuple[int, int]]) -> list[list[tuple[int, int, int]]]:
    """Hierholzer on an undirected multigraph with all degrees even.

    Returns circuits as lists of ``(edge id, from, to)``.
    """
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        inc[u].append(i)
        inc[v].append(i)
    ptr = [0] * n
    used = [False] * len(edges)
    circuits = []
    for start in range(n):
        while ptr[start] < len(inc[start]) and used[inc[start][ptr[start]]]:
            ptr[start] += 1
        if ptr[start] == len(inc[start]):
            continue
        stack: list[tuple[int, int | None, int | None]] = [(start, None, None)]
        circuit = []
        while stack:
            v, via, frm = stack[-1]
            while ptr[v] < len(inc[v]) and used[inc[v][ptr[v]]]:
                ptr[v] += 1
            if ptr[v] == len(inc[v]):
                stack.pop()
                if via is not None:
                    circuit.append((via, frm, v))
            else:
                e = inc[v][ptr[v]]
                used[e] = True
                a, b = edges[e]
                w = b if a == v else a
                stack.append((w, e, v))
        circuit.reverse()
        circuits.append(circuit)
    return circuits


def _pad_to_regular(g: Graph, target: int) -> tuple[int, list[tuple[int, int]], int]:
    """Add fake edges (and padding gadgets if unavoidable) until every vertex has
    degree ``target``. Returns (vertex count, added edges, n_original)."""
    _, deg = degree_profile(g)
    deficit = [target - x for x in deg]
    mult = Counter((min(u, v), max(u, v)) for u, v in g.edges)
    added: list[tuple[int, int]] = []
    heap = [(-deficit[v], v) for v in range(g.n) if deficit[v] > 0]
    heapq.heapify(heap)
    n = g.n
    while heap:
        du, u = heapq.heappop(heap)
        if not heap:
            # lone deficient vertex: attach a gadget K_{target+1} minus one edge
            while deficit[u] > 0:
                base = n
                gadget = list(range(base, base + target + 1))
                n += target + 1
                a, b = gadget[0], gadget[1]
                for x, y in combinations(gadget, 2):
                    if (x, y) != (a, b):
                        added.append((x, y))
                added.append((u, a))
                added.append((u, b))
                deficit[u] -= 2
            break
        # prefer a partner that is not yet adjacent
        popped = []
        partner = None
        while heap and len(popped) < 8:
            item = heapq.heappop(heap)
            popped.append(item)
            if mult[(min(u, item[1]), max(u, item[1]))] == 0:
                partner = item
                break
        if partner is None:
            partner = min(popped, key=lambda it: (mult[(min(u, it[1]), max(u, it[1]))], it))
        popped.remove(partner)
        for it in popped:
            heapq.heappush(heap, it)
        v = partner[1]
        added.append((u, v))
        mult[(min(u, v), max(u, v))] += 1
        deficit[u] -= 1
        deficit[v] -= 1
        if deficit[u] > 0:
            heapq.heappush(heap, (-deficit[u], u))
        if deficit[v] > 0:
            heapq.heappush(heap, (-deficit[v], v))
    return n, added, g.n


def _split_regular_bipartite(n: int, arcs: list[tuple[int, int]], ids: list[int], d: int) -> list[list[int]]:
    """Split a d-regular bipartite multigraph (tails on the left, heads on the
    right) into d perfect matchings; returns lists of arc ids."""
    if d == 0:
        return []
    if d == 1:
        return [list(ids)]
    if d % 2 == 0:
        # Euler split: alternate edges of each circuit
        edges = [(arcs[i][0], n + arcs[i][1]) for i in ids]
        halves: tuple[list[int], list[int]] = ([], [])
        for circuit in _euler_circuits(2 * n, edges):
            for k, (e, _, _) in enumerate(circuit):
                halves[k % 2].append(ids[e])
        return _split_regular_bipartite(n, arcs, halves[0], d // 2) + _split_regular_bipartite(n, arcs, halves[1], d // 2)
    bg = nx.Graph()
    left = [("L", v) for v in range(n)]
    bg.add_nodes_from(left, bipartite=0)
    bg.add_nodes_from((("R", v) for v in range(n)), bipartite=1)
    for i in ids:
        t, h = arcs[i]
        bg.add_edge(("L", t), ("R", h))
    match = nx.bipartite.hopcroft_karp_matching(bg, top_nodes=left)
    chosen = []
    rest = []
    taken = set()
    for i in ids:
        t, h = arcs[i]
        if t not in taken and match.get(("L", t)) == ("R", h):
            taken.add(t)
            chosen.append(i)
        else:
            rest.append(i)
    if len(chosen) != n:
        raise RuntimeError("regular bipartite graph without a perfect matching")
    return [chosen] + _split_regular_bipartite(n, arcs, rest, d - 1)


def augment_and_decompose(g: Graph, min_factors: int = 1) -> TwoFactorDecomposition:
    """Orient and pad ``g`` into a d-in/d-out regular multigraph and partition
    its arcs into d directed 2-factors, d = max(ceil(Δ/2), min_factors)."""
    delta, _ = degree_profile(g)
    if delta < 1:
        raise GraphError("graph has no edges")
    d = max((delta + 1) // 2, min_factors)
    n, added, n_orig = _pad_to_regular(g, 2 * d)
    all_edges = list(g.edges) + added
    origin = [i for i in range(g.m)] + [-1] * len(added)

    # parallel copies become 2-cycles so no two copies share a direction
    groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, (u, v) in enumerate(all_edges):
        groups[(min(u, v), max(u, v))].append(i)
    arcs: list[tuple[int, int] | None] = [None] * len(all_edges)
    for (u, v), ids in groups.items():
        for k in range(0, len(ids) - 1, 2):
            arcs[ids[k]] = (u, v)
            arcs[ids[k + 1]] = (v, u)
    rest = [i for i in range(len(all_edges)) if arcs[i] is None]
    for circuit in _euler_circuits(n, [all_edges[i] for i in rest]):
        for e, frm, to in circuit:
            arcs[rest[e]] = (frm, to)

    final = [a for a in arcs if a is not None]
    assert len(final) == len(all_edges)
    factors = _split_regular_bipartite(n, final, list(range(len(final))), d)
    fake = frozenset(i for i in range(len(final)) if origin[i] < 0)
    aug = Graph(n, tuple(final), fake, multigraph=True)
    return TwoFactorDecomposition(aug, tuple(tuple(sorted(f)) for f in factors), tuple(origin), n_orig)


def check_two_factor_decomposition(g: Graph, tfd: TwoFactorDecomposition) -> None:
    """Assert the three structural properties; raises AssertionError on failure."""
    aug = tfd.augmented
    d = tfd.d
    indeg = Counter(h for _, h in aug.edges)
    outdeg = Counter(t for t, _ in aug.edges)
    for v in range(aug.n):
        assert indeg[v] == d and outdeg[v] == d, f"vertex {v}: in {indeg[v]}, out {outdeg[v]}"
    for e, (u, v) in enumerate(g.edges):
        a = tfd.origin.index(e)
        assert set(aug.edges[a]) == {u, v} and a not in aug.fake
    seen = set()
    for f in tfd.factors:
        tails = Counter(aug.edges[a][0] for a in f)
        heads = Counter(aug.edges[a][1] for a in f)
        assert all(tails[v] == 1 and heads[v] == 1 for v in range(aug.n))
        assert not seen & set(f)
        seen |= set(f)
    assert len(seen) == aug.m


# ---------------------------------------------------------------------------
# Colorings and matchings
# ---------------------------------------------------------------------------


def three_edge_color(g: Graph, budget: int = 200_000) -> EdgeColoring | None:
    """Proper 3-edge-coloring by backtracking, or None when none exists."""
    top, _ = degree_profile(g)
    if top > 3:
        return None
    if g.m == 0:
        return EdgeColoring((), 3)
    inc = g.incidence()
    # BFS edge order keeps constraints local
    order: list[int] = []
    seen_e = set()
    for comp in g.components():
        queue = [comp[0]]
        seen_v = {comp[0]}
        for v in queue:
            for e in inc[v]:
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                w = g.other(e, v)
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    color = [-1] * g.m
    at = [set() for _ in range(g.n)]
    steps = 0

    def rec(k: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise SearchBudgetExceeded(f"3-edge-coloring search exceeded {budget} steps")
        if k == len(order):
            return True
        e = order[k]
        u, v = g.edges[e]
        for c in range(3):
            if c in at[u] or c in at[v]:
                continue
            color[e] = c
            at[u].add(c)
            at[v].add(c)
            if rec(k + 1):
                return True
            at[u].discard(c)
            at[v].discard(c)
        color[e] = -1
        return False

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * g.m + 100))
    try:
        found = rec(0)
    finally:
        sys.setrecursionlimit(old)
    return make_coloring(g, color, 3) if found else None


def perfect_matching_cubic(g: Graph, seed: int | None = None) -> list[int]:
    """A perfect matching as a list of edge ids (blossom, via networkx)."""
    if g.n % 2:
        raise NoPerfectMatching("odd number of vertices")
    rng = random.Random(seed)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    ids = {}
    for e, (u, v) in enumerate(g.edges):
        key = (min(u, v), max(u, v))
        if key in ids:
            continue
        ids[key] = e
        h.add_edge(u, v, weight=rng.random() if seed is not None else 1)
    mate = nx.max_weight_matching(h, maxcardinality=True)
    if len(mate) * 2 != g.n:
        raise NoPerfectMatching("maximum matching is not perfect")
    return sorted(ids[(min(u, v), max(u, v))] for u, v in mate)


def enumerate_perfect_matchings(g: Graph):
    """Yield every perfect matching (edge-id tuples). Exponential; small graphs only."""
    inc = g.incidence()
    matched = [False] * g.n
    chosen: list[int] = []

    def rec():
        try:
            v = matched.index(False)
        except ValueError:
            yield tuple(sorted(chosen))
            return
        matched[v] = True
        for e in inc[v]:
            w = g.other(e, v)
            if not matched[w]:
                matched[w] = True
                chosen.append(e)
                yield from rec()
                chosen.pop()
                matched[w] = False
        matched[v] = False

    if g.n % 2 == 0:
        yield from rec()


def cycles_of_two_factor(g: Graph, edge_ids) -> list[list[int]]:
    """Vertex sequences (in cyclic order) of the cycles formed by ``edge_ids``."""
    nbr: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e in edge_ids:
        u, v = g.edges[e]
        nbr[u].append((e, v))
        nbr[v].append((e, u))
    seen = set()
    out = []
    for s in sorted(nbr):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        prev_e = None
        v = s
        while True:
            e, w = next((e, w) for e, w in nbr[v] if e != prev_e)
            if w == s:
                break
            cyc.append(w)
            seen.add(w)
            prev_e, v = e, w
        out.append(cyc)
    return out


def odd_cycle_count(g: Graph, matching) -> int:
    rest = set(range(g.m)) - set(matching)
    return sum(1 for c in cycles_of_two_factor(g, rest) if len(c) % 2)


# ---------------------------------------------------------------------------
# Four-matching decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OddnessDecomposition:
    """Classes 0..3 stand for M1..M4. ``k`` odd cycles each carry one M4 edge.

    For k == 2, ``bridge`` is ``(u, w, u2, w2, path)``: the M4 edges are
    ``{u, w}`` and ``{u2, w2}`` and ``path`` runs from u to u2 in M1 ∪ M2
    touching the two odd cycles only at its ends.
    """

    coloring: EdgeColoring
    odd_cycles: tuple[tuple[int, ...], ...]
    m4_edges: tuple[int, ...]
    k: int
    exact: bool
    bridge: tuple | None = None


def _edge_lookup(g: Graph) -> dict[tuple[int, int], int]:
    return {(min(u, v), max(u, v)): e for e, (u, v) in enumerate(g.edges)}


def _color_even_cycle(cyc: list[int], lookup, classes: list[int]) -> None:
    L = len(cyc)
    for i in range(L):
        a, b = cyc[i], cyc[(i + 1) % L]
        classes[lookup[(min(a, b), max(a, b))]] = 1 + (i % 2)


def check_cubic_bridgeless(g: Graph) -> None:
    top, deg = degree_profile(g)
    if g.n == 0 or any(x != 3 for x in deg):
        raise NotCubic("graph is not 3-regular")
    if g.multigraph and len({(min(u, v), max(u, v)) for u, v in g.edges}) != g.m:
        raise NotCubic("parallel edges")
    h = nx.Graph(list(g.edges))
    if nx.has_bridges(h):
        raise Bridged("graph has a bridge")


def best_perfect_matching(g: Graph, exhaustive_limit: int = 14, restarts: int = 64, seed: int = 0) -> tuple[tuple[int, ...], int, bool]:
    """Perfect matching minimizing odd cycles in its complement.

    Exhaustive for n <= ``exhaustive_limit``; otherwise randomized restarts and
    the returned count is only an upper bound (third item False).
    """
    best = None
    if g.n <= exhaustive_limit:
        for pm in enumerate_perfect_matchings(g):
            k = odd_cycle_count(g, pm)
            if best is None or k < best[1]:
                best = (pm, k)
                if k == 0:
                    break
        if best is None:
            raise NoPerfectMatching("no perfect matching")
        return best[0], best[1], True
    for r in range(restarts):
        pm = tuple(perfect_matching_cubic(g, seed=seed + r))
        k = odd_cycle_count(g, pm)
        if best is None or k < best[1]:
            best = (pm, k)
            if k == 0:
                break
    return best[0], best[1], False


def oddness_decomposition(g: Graph, matching=None, exhaustive_limit: int = 14, seed: int = 0) -> OddnessDecomposition:
    """Decompose a bridgeless cubic graph into M1 (perfect) and M2, M3, M4.

    If ``matching`` is given it is used as M1; otherwise the perfect matching
    with the fewest odd complementary cycles found is used.
    """
    check_cubic_bridgeless(g)
    if matching is None:
        pm, k, exact = best_perfect_matching(g, exhaustive_limit, seed=seed)
    else:
        pm, exact = tuple(sorted(matching)), False
        k = odd_cycle_count(g, pm)
    lookup = _edge_lookup(g)
    classes = [-1] * g.m
    for e in pm:
        classes[e] = 0
    rest = set(range(g.m)) - set(pm)
    cycles = cycles_of_two_factor(g, rest)
    odd = [c for c in cycles if len(c) % 2]
    for c in cycles:
        if len(c) % 2 == 0:
            _color_even_cycle(c, lookup, classes)
    bridge = None
    if k == 2:
        bridge = _bridge_path(g, odd[0], odd[1], lookup, classes)
        u, w, u2, w2, _ = bridge
        _color_odd_at(odd[0], u, w, lookup, classes)
        _color_odd_at(odd[1], u2, w2, lookup, classes)
        m4 = (lookup[(min(u, w), max(u, w))], lookup[(min(u2, w2), max(u2, w2))])
    else:
        m4 = []
        for c in odd:
            u = min(c)
            i = c.index(u)
            w = min(c[(i + 1) % len(c)], c[(i - 1) % len(c)])
            _color_odd_at(c, u, w, lookup, classes)
            m4.append(lookup[(min(u, w), max(u, w))])
        m4 = tuple(m4)
    col = make_coloring(g, classes, 4)
    return OddnessDecomposition(col, tuple(tuple(c) for c in odd), tuple(m4), k, exact, bridge)


def _color_odd_at(cyc: list[int], u: int, w: int, lookup, classes: list[int]) -> None:
    """Color odd cycle with M4 = {u, w}; u's other cycle edge gets M3 and the
    colors alternate from there, so w ends with M2."""
    L = len(cyc)
    i = cyc.index(u)
    nxt, prv = cyc[(i + 1) % L], cyc[(i - 1) % L]
    step = -1 if nxt == w else 1
    walk = [cyc[(i + step * j) % L] for j in range(L)]
    assert walk[-1] == w
    classes[lookup[(min(u, w), max(u, w))]] = 3
    for j in range(L - 1):
        a, b = walk[j], walk[j + 1]
        classes[lookup[(min(a, b), max(a, b))]] = 2 if j % 2 == 0 else 1


def _bridge_path(g: Graph, c: list[int], c2: list[int], lookup, classes: list[int]):
    """Path between the two odd cycles in M1 ∪ M2 (classes must hold M1 and the
    even cycles already)."""
    # provisional coloring of the odd cycles: M4 at (a, b) with a carrying M3
    tmp = list(classes)
    a = c[0]
    _color_odd_at(c, a, c[1], lookup, tmp)
    a2 = c2[0]
    _color_odd_at(c2, a2, c2[1], lookup, tmp)
    inc = g.incidence()
    walk = [a]
    prev = None
    v = a
    while True:
        nxt = [e for e in inc[v] if tmp[e] in (0, 1) and e != prev]
        if not nxt:
            break
        e = nxt[0]
        prev = e
        v = g.other(e, v)
        walk.append(v)
    assert walk[-1] == a2, "M1 ∪ M2 path from a does not end at a'"
    in_c, in_c2 = set(c), set(c2)
    iu = max(i for i, x in enumerate(walk) if x in in_c)
    iu2 = next(i for i in range(iu, len(walk)) if walk[i] in in_c2)
    path = walk[iu : iu2 + 1]
    u, u2 = path[0], path[-1]
    # M4 partner: a cycle neighbor of u (lower id for determinism)
    w = min(c[(c.index(u) + 1) % len(c)], c[(c.index(u) - 1) % len(c)])
    w2 = min(c2[(c2.index(u2) + 1) % len(c2)], c2[(c2.index(u2) - 1) % len(c2)])
    return (u, w, u2, w2, tuple(path))
