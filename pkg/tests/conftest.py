import random
from functools import lru_cache

import pytest

from racdraw.graph import Graph
from racdraw.io import generate

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def cubic_corpus(count: int = 1000, lo: int = 10, hi: int = 200):
    rng = random.Random(1)
    out = []
    for s in range(count):
        n = 2 * rng.randint(lo // 2, hi // 2)
        out.append(generate(f"cubic3col({n})", s))
    return tuple(out)


@lru_cache(maxsize=None)
def reg4_corpus(count: int = 500, lo: int = 10, hi: int = 200):
    rng = random.Random(0)
    return tuple(generate(f"reg4({rng.randint(lo, hi)})", s).graph for s in range(count))


@lru_cache(maxsize=None)
def reg7_corpus(count: int = 200, lo: int = 8, hi: int = 100):
    rng = random.Random(2)
    out = []
    for s in range(count):
        n = 2 * rng.randint(lo // 2, hi // 2)
        out.append(generate(f"reg7col({n})", s))
    return tuple(out)


def cycle(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def random_graph(rng: random.Random, n: int, max_deg: int, attempts: int) -> Graph:
    deg = [0] * n
    seen = set()
    edges = []
    for _ in range(attempts):
        u, v = rng.randrange(n), rng.randrange(n)
        key = (min(u, v), max(u, v))
        if u == v or key in seen or deg[u] >= max_deg or deg[v] >= max_deg:
            continue
        seen.add(key)
        deg[u] += 1
        deg[v] += 1
        edges.append(key)
    return Graph(n, tuple(edges))


@pytest.fixture
def record():
    """Collects one summary line per acceptance criterion."""

    def add(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
