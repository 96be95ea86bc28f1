"""Polyline drawings with exact coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable

Point = tuple  # (x, y) with int or Fraction entries


class MalformedDrawing(ValueError):
    pass


@dataclass
class Drawing:
    """Vertex positions plus a polyline per edge.

    ``edges`` maps an edge id to its endpoints and ``bends`` maps the same id to
    the interior points walked from the first endpoint to the second. Coordinates
    of a finished drawing are integers; ``scale`` records the factor applied to
    reach integrality (e.g. 2 when the construction used half units).
    """

    positions: dict[int, Point]
    edges: dict[int, tuple[int, int]]
    bends: dict[int, list[Point]] = field(default_factory=dict)
    scale: int = 1

    def polyline(self, e: int) -> list[Point]:
        u, v = self.edges[e]
        return [self.positions[u], *self.bends.get(e, []), self.positions[v]]

    def bend_count(self, e: int) -> int:
        return len(self.bends.get(e, ()))

    def copy(self) -> "Drawing":
        return Drawing(
            dict(self.positions),
            dict(self.edges),
            {e: list(b) for e, b in self.bends.items()},
            self.scale,
        )

    def points(self) -> Iterable[Point]:
        yield from self.positions.values()
        for pts in self.bends.values():
            yield from pts

    def to_integer(self, factor: int | None = None) -> "Drawing":
        """Multiply every coordinate by ``factor`` (smallest clearing factor if None)."""
        if factor is None:
            factor = 1
            for x, y in self.points():
                factor = lcm(factor, Fraction(x).denominator, Fraction(y).denominator)

        def conv(p: Point) -> tuple[int, int]:
            x, y = Fraction(p[0]) * factor, Fraction(p[1]) * factor
            if x.denominator != 1 or y.denominator != 1:
                raise MalformedDrawing(f"point {p} is not integral after scaling by {factor}")
            return int(x), int(y)

        return Drawing(
            {v: conv(p) for v, p in self.positions.items()},
            dict(self.edges),
            {e: [conv(p) for p in pts] for e, pts in self.bends.items() if pts},
            self.scale * factor,
        )

    def translated(self, dx, dy) -> "Drawing":
        def mv(p):
            return (p[0] + dx, p[1] + dy)

        return Drawing(
            {v: mv(p) for v, p in self.positions.items()},
            dict(self.edges),
            {e: [mv(p) for p in pts] for e, pts in self.bends.items()},
            self.scale,
        )

    def multiplied(self, k: int) -> "Drawing":
        def mv(p):
            return (p[0] * k, p[1] * k)

        return Drawing(
            {v: mv(p) for v, p in self.positions.items()},
            dict(self.edges),
            {e: [mv(p) for p in pts] for e, pts in self.bends.items()},
            self.scale * k,
        )

    def restricted(self, keep_edges: Iterable[int], keep_vertices: Iterable[int] | None = None) -> "Drawing":
        keep_edges = set(keep_edges)
        verts = set(self.positions) if keep_vertices is None else set(keep_vertices)
        return Drawing(
            {v: p for v, p in self.positions.items() if v in verts},
            {e: uv for e, uv in self.edges.items() if e in keep_edges},
            {e: list(b) for e, b in self.bends.items() if e in keep_edges and b},
            self.scale,
        )

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or (isinstance(c, Rational) and c.denominator == 1) for p in self.points() for c in p)


def bounding_box(d: Drawing) -> tuple:
    pts = list(d.points())
    if not pts:
        return (0, 0)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (max(xs) - min(xs), max(ys) - min(ys))


def tile(drawings: list[Drawing], gap: int = 2) -> tuple[Drawing, list[int]]:
    """Place drawings side by side, left to right, ``gap`` units apart.

    All inputs must share the same scale. Returns the combined drawing and the
    x-offset applied to each part.
    """
    if not drawings:
        return Drawing({}, {}), []
    scale = drawings[0].scale
    if any(d.scale != scale for d in drawings):
        raise MalformedDrawing("cannot tile drawings with different scales")
    out = Drawing({}, {}, {}, scale)
    cursor = 0
    offsets = []
    for d in drawings:
        pts = list(d.points())
        if not pts:
            offsets.append(0)
            continue
        minx = min(p[0] for p in pts)
        maxx = max(p[0] for p in pts)
        miny = min(p[1] for p in pts)
        dx = cursor - minx
        moved = d.translated(dx, -miny)
        out.positions.update(moved.positions)
        out.edges.update(moved.edges)
        out.bends.update(moved.bends)
        offsets.append(dx)
        cursor += maxx - minx + gap * scale
    return out, offsets
