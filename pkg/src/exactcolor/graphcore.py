"""Colored-graph data model: finite, not necessarily complete graphs with an
exact edge coloring, plus induced-subgraph color census and canonical JSON
serialization (format "ecg-v1").

A ColoredGraph is immutable after construction and safe to share.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ColorOutOfRange,
    DuplicateEdge,
    ParseError,
    SelfLoop,
    UnusedColor,
    VertexOutOfRange,
)

FORMAT_TAG = "ecg-v1"

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise SelfLoop(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ColoredGraph:
    """Vertices are 0..n-1; edges map normalized pairs (u < v) to colors in
    1..palette.  Non-complete graphs are first-class: missing pairs simply
    contribute nothing to any census."""

    n: int
    edges: Mapping[Edge, int]
    palette: int

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]], palette: int) -> "ColoredGraph":
        emap: dict[Edge, int] = {}
        for u, v, color in edges:
            e = _norm_edge(u, v)
            if e in emap:
                raise DuplicateEdge(f"edge {e} listed twice")
            emap[e] = color
        g = cls(n=n, edges=emap, palette=palette)
        validate_exact(g)
        return g

    def color_of(self, u: int, v: int) -> int | None:
        return self.edges.get(_norm_edge(u, v))

    def sorted_edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, self.edges[(u, v)]) for (u, v) in sorted(self.edges)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.palette == other.palette
            and dict(self.edges) == dict(other.edges)
        )


@dataclass(frozen=True)
class ColorCensus:
    subset: frozenset[int]
    colors: frozenset[int]

    @property
    def count(self) -> int:
        return len(self.colors)


def validate_exact(g: ColoredGraph) -> None:
    """Raise unless g satisfies the exact-coloring contract: every declared
    color used at least once, all colors in range, edges normalized."""
    seen: set[int] = set()
    for (u, v), color in g.edges.items():
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{g.n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if u > v:
            raise DuplicateEdge(f"edge ({u},{v}) not normalized")
        if not 1 <= color <= g.palette:
            raise ColorOutOfRange(f"color {color} outside 1..{g.palette}")
        seen.add(color)
    for k in range(1, g.palette + 1):
        if k not in seen:
            raise UnusedColor(k)


def color_census(g: ColoredGraph, subset: Iterable[int]) -> ColorCensus:
    """Distinct colors among edges of g with both endpoints in the subset."""
    s = frozenset(subset)
    for v in s:
        if not 0 <= v < g.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    colors = frozenset(
        color for (u, v), color in g.edges.items() if u in s and v in s
    )
    return ColorCensus(subset=s, colors=colors)


def save(g: ColoredGraph) -> bytes:
    """Canonical ecg-v1 bytes: edges sorted by (u, v), compact separators,
    UTF-8, no trailing whitespace."""
    doc = {
        "format": FORMAT_TAG,
        "n": g.n,
        "palette": g.palette,
        "edges": [[u, v, c] for (u, v, c) in g.sorted_edges()],
    }
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def load(data: bytes) -> ColoredGraph:
    """Inverse of save; validates the exact-coloring contract on the way in."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise ParseError(f"missing or unknown format tag (expected {FORMAT_TAG!r})")
    try:
        n = int(doc["n"])
        palette = int(doc["palette"])
        triples = [(int(u), int(v), int(c)) for u, v, c in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph document: {exc}") from None
    return ColoredGraph.from_edges(n, triples, palette)
