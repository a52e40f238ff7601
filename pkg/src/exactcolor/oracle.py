"""Ground truth by exhaustive enumeration: scan every induced subgraph of a
colored graph and find (or refute) an exactly-m-colored subset.

Color sets are bitmasks over the palette; subset censuses are built
incrementally by adding one vertex at a time, so a full scan costs
O(2^n * n) cheap integer operations.  Enumeration is by ascending subset
bitmask, which makes "first hit" and "lexicographically smallest" coincide.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import MInvalid, TooLarge
from .graphcore import ColoredGraph

FIND_MAX_N = 30
HISTOGRAM_MAX_N = 24
_DP_MAX_N = 20  # above this, stream instead of materializing 2^n color masks


@dataclass(frozen=True)
class WitnessReport:
    verified: bool
    counterexample: tuple[int, ...] | None
    subsets_scanned: int
    wall_time_ms: float

    def same_result(self, other: "WitnessReport") -> bool:
        """Equality ignoring wall time (which is never reproducible)."""
        return (
            self.verified == other.verified
            and self.counterexample == other.counterexample
            and self.subsets_scanned == other.subsets_scanned
        )


def _adjacency_bits(g: ColoredGraph) -> list[list[int]]:
    adj = [[0] * g.n for _ in range(g.n)]
    for (u, v), color in g.edges.items():
        bit = 1 << (color - 1)
        adj[u][v] = bit
        adj[v][u] = bit
    return adj


def _color_masks_dp(g: ColoredGraph) -> list[int]:
    """colors[mask] = bitmask of colors on edges inside the subset `mask`."""
    adj = _adjacency_bits(g)
    size = 1 << g.n
    colors = [0] * size
    for mask in range(1, size):
        rest = mask & (mask - 1)
        v = (mask & -mask).bit_length() - 1
        acc = colors[rest]
        row = adj[v]
        r = rest
        while r:
            u = (r & -r).bit_length() - 1
            acc |= row[u]
            r &= r - 1
        colors[mask] = acc
    return colors


def _stream_scan(g: ColoredGraph, prefix_members: tuple[int, ...] = (),
                 prefix_colors: int = 0, prefix_mask: int = 0, top: int | None = None):
    """Yield (mask, colorbits) in ascending mask order over the free vertices
    0..top-1, with the vertices in prefix_members already fixed as present."""
    adj = _adjacency_bits(g)
    if top is None:
        top = g.n

    def rec(i, members, colors, mask):
        if i < 0:
            yield mask, colors
            return
        yield from rec(i - 1, members, colors, mask)
        acc = colors
        row = adj[i]
        for u in members:
            acc |= row[u]
        members.append(i)
        yield from rec(i - 1, members, acc, mask | (1 << i))
        members.pop()

    yield from rec(top - 1, list(prefix_members), prefix_colors, prefix_mask)


def _partitions(g: ColoredGraph, workers: int):
    """Split the subset space by membership pattern of the top vertices.

    Returns a list of (prefix_members, prefix_colors, prefix_mask, top)
    covering all subsets exactly once, each internally in ascending order.
    """
    k = max(1, (workers - 1).bit_length()) if workers > 1 else 0
    k = min(k, g.n)
    adj = _adjacency_bits(g)
    tops = list(range(g.n - k, g.n))
    parts = []
    for pattern in range(1 << k):
        members: list[int] = []
        colors = 0
        mask = 0
        for j, v in enumerate(tops):
            if pattern >> j & 1:
                for u in members:
                    colors |= adj[v][u]
                members.append(v)
                mask |= 1 << v
        parts.append((tuple(members), colors, mask, g.n - k))
    return parts


def find_exactly_m_subset(
    g: ColoredGraph, m: int, threads: int = 1, short_circuit: bool = False
) -> tuple[tuple[int, ...] | None, int]:
    """Lexicographically smallest (as bitmask) subset whose census has
    exactly m colors, or None.  Returns (subset, subsets_scanned).

    The full space is scanned by default so that serial and parallel runs
    report identical counts; short_circuit stops at the first hit (which is
    still the minimal one, since enumeration is ascending).
    """
    if m < 1:
        raise MInvalid("m must be >= 1")
    if g.n > FIND_MAX_N:
        raise TooLarge(f"n = {g.n} exceeds the 2^n guard ({FIND_MAX_N})")

    if threads <= 1 and g.n <= _DP_MAX_N:
        colors = _color_masks_dp(g)
        best = None
        for mask, cbits in enumerate(colors):
            if cbits.bit_count() == m:
                best = mask
                if short_circuit:
                    return _mask_to_tuple(best), mask + 1
                break
        return (_mask_to_tuple(best) if best is not None else None), len(colors)

    def scan_part(part):
        members, pcolors, pmask, top = part
        best_local = None
        scanned = 0
        for mask, cbits in _stream_scan(g, members, pcolors, pmask, top):
            scanned += 1
            if best_local is None and cbits.bit_count() == m:
                best_local = mask
                if short_circuit:
                    break
        return best_local, scanned

    parts = _partitions(g, threads)
    if threads <= 1:
        results = [scan_part(p) for p in parts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan_part, parts))
    hits = [b for b, _ in results if b is not None]
    scanned = sum(s for _, s in results)
    if short_circuit:
        # partial counts are not comparable across worker layouts
        scanned = min(scanned, 1 << g.n)
    best = min(hits) if hits else None
    return (_mask_to_tuple(best) if best is not None else None), scanned


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def verify_witness(g: ColoredGraph, m: int, threads: int = 1) -> WitnessReport:
    """verified iff no induced subgraph of g is exactly m-colored."""
    t0 = time.perf_counter()
    counterexample, scanned = find_exactly_m_subset(g, m, threads=threads)
    return WitnessReport(
        verified=counterexample is None,
        counterexample=counterexample,
        subsets_scanned=scanned,
        wall_time_ms=(time.perf_counter() - t0) * 1000,
    )


def verify_lifted(g: ColoredGraph, m: int, mode: str, threads: int = 1) -> WitnessReport:
    """Verify the lifted (infinite) coloring built on top of the finite base.

    mode "one" (one extra color): an exactly-m-colored infinite subgraph
    exists iff some subset of the base has census m-1.
    mode "two": iff some subset with nonempty trace has census m-2.
    """
    if mode == "one":
        if m < 2:
            raise MInvalid("mode one needs m >= 2")
        return verify_witness(g, m - 1, threads=threads)
    if mode == "two":
        if m < 3:
            raise MInvalid("mode two needs m >= 3")
        # m - 2 >= 1, so any subset realizing it spans an edge and has a
        # nonempty trace automatically
        return verify_witness(g, m - 2, threads=threads)
    raise MInvalid(f"unknown lift mode {mode!r}")


def census_histogram(g: ColoredGraph, threads: int = 1) -> dict[int, int]:
    """Map census count -> number of subsets attaining it, over all 2^n."""
    if g.n > HISTOGRAM_MAX_N:
        raise TooLarge(f"n = {g.n} exceeds the histogram guard ({HISTOGRAM_MAX_N})")
    hist: Counter[int] = Counter()
    if threads <= 1 and g.n <= _DP_MAX_N:
        for cbits in _color_masks_dp(g):
            hist[cbits.bit_count()] += 1
        return dict(hist)

    def scan_part(part):
        members, pcolors, pmask, top = part
        local: Counter[int] = Counter()
        for _, cbits in _stream_scan(g, members, pcolors, pmask, top):
            local[cbits.bit_count()] += 1
        return local

    parts = _partitions(g, threads)
    if threads <= 1:
        locals_ = [scan_part(p) for p in parts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            locals_ = list(pool.map(scan_part, parts))
    for loc in locals_:
        hist.update(loc)
    return dict(hist)


def count_exactly_m(g: ColoredGraph, m: int) -> int:
    """Number of subsets with census exactly m (search-objective helper)."""
    if g.n > HISTOGRAM_MAX_N:
        raise TooLarge(f"n = {g.n} exceeds the histogram guard ({HISTOGRAM_MAX_N})")
    if g.n <= _DP_MAX_N:
        return sum(1 for cbits in _color_masks_dp(g) if cbits.bit_count() == m)
    return sum(1 for _, cbits in _stream_scan(g) if cbits.bit_count() == m)
