"""Colorful clique colorings: seeded random k-colorings of the complete
graph K_s in which every l-vertex induced subgraph uses all k colors, with
exhaustive verification and the union-bound failure estimate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetTooLarge, InvalidInput, RetriesExhausted
from .graphcore import ColoredGraph

SUBSET_BUDGET = 10**8
PRNG_ALGORITHM = "mt19937"  # random.Random; sequence pinned by CPython


@dataclass(frozen=True)
class CliqueColoringSpec:
    k: int
    l: int
    s: int
    seed: int
    max_retries: int = 64

    def __post_init__(self):
        if not (1 <= self.k <= self.l <= self.s and self.l >= 2):
            raise InvalidInput("need 1 <= k <= l <= s and l >= 2")


def colorful_precondition(k: int, l: int, s: int) -> bool:
    """Truthful evaluation of e^2 * s < l * e^(l / 4k) at these values."""
    return 2 + math.log(s) < math.log(l) + l / (4 * k)


def failure_probability_bound(k: int, l: int, s: int) -> float:
    """Union bound on the probability that a uniform random k-coloring of
    K_s leaves some l-subset short of a color:
    C(s, l) * k * ((k-1)/k)^C(l, 2), evaluated in log space."""
    if k == 1:
        return 0.0
    logp = (
        math.log(math.comb(s, l))
        + math.log(k)
        + math.comb(l, 2) * (math.log(k - 1) - math.log(k))
    )
    return math.exp(logp) if logp > -708 else 0.0


def log2_failure_probability_bound(k: int, l: int, s: int) -> float:
    """Same bound as log base 2 (metadata convenience; -inf for k = 1)."""
    if k == 1:
        return -math.inf
    return (
        math.log2(math.comb(s, l))
        + math.log2(k)
        + math.comb(l, 2) * (math.log2(k - 1) - math.log2(k))
    )


def verify_colorful(g: ColoredGraph, k: int, l: int, mode: str = "exhaustive",
                    count: int = 10**4, seed: int = 0) -> bool:
    """Check that every l-subset of the complete graph g sees all k colors.

    Exhaustive mode checks all C(s, l) subsets (guarded); sample mode checks
    `count` uniformly drawn subsets and is one-sided (True = no violation
    found among the samples)."""
    s = g.n
    if len(g.edges) != math.comb(s, 2):
        raise InvalidInput("graph must be complete")
    if g.palette != k:
        raise InvalidInput("palette must equal k")
    adj = [[0] * s for _ in range(s)]
    for (u, v), color in g.edges.items():
        bit = 1 << (color - 1)
        adj[u][v] = bit
        adj[v][u] = bit
    full = (1 << k) - 1

    def subset_ok(subset) -> bool:
        seen = 0
        for i, u in enumerate(subset):
            row = adj[u]
            for v in subset[i + 1 :]:
                seen |= row[v]
            if seen == full:
                return True
        return seen == full

    if mode == "exhaustive":
        if math.comb(s, l) > SUBSET_BUDGET:
            raise BudgetTooLarge(f"C({s},{l}) exceeds {SUBSET_BUDGET}")
        return all(subset_ok(sub) for sub in combinations(range(s), l))
    if mode == "sample":
        rng = random.Random(seed)
        return all(subset_ok(tuple(rng.sample(range(s), l))) for _ in range(count))
    raise InvalidInput(f"unknown mode {mode!r}")


def random_colorful_coloring(spec: CliqueColoringSpec) -> tuple[ColoredGraph, int]:
    """Draw i.i.d. uniform edge colorings of K_s until one is exact (all k
    colors used) and passes verify_colorful; returns (graph, attempts).

    Each attempt is a fresh draw from the seeded stream, so identical specs
    give identical colorings."""
    k, l, s = spec.k, spec.l, spec.s
    rng = random.Random(spec.seed)
    edges = list(combinations(range(s), 2))
    for attempt in range(1, spec.max_retries + 1):
        colors = [rng.randrange(1, k + 1) for _ in edges]
        if len(set(colors)) != k:
            continue  # some color unused: exactness repair = redraw
        g = ColoredGraph.from_edges(
            s, [(u, v, c) for (u, v), c in zip(edges, colors)], k
        )
        if verify_colorful(g, k, l, mode="exhaustive"):
            return g, attempt
    raise RetriesExhausted(
        f"no colorful coloring in {spec.max_retries} attempts for "
        f"(k={k}, l={l}, s={s}, seed={spec.seed})"
    )
