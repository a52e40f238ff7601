import random

import pytest

from exactcolor.graphcore import ColoredGraph


def random_exact_graph(rng: random.Random, max_n: int = 12,
                       complete: bool | None = None) -> ColoredGraph:
    """Random graph with a valid exact coloring (every declared color used)."""
    n = rng.randint(3, max_n)
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if complete is None:
        complete = rng.random() < 0.5
    if complete:
        pairs = all_pairs
    else:
        count = rng.randint(1, len(all_pairs))
        pairs = rng.sample(all_pairs, count)
    palette = rng.randint(1, min(len(pairs), 15))
    colors = list(range(1, palette + 1))
    colors += [rng.randint(1, palette) for _ in range(len(pairs) - palette)]
    rng.shuffle(colors)
    return ColoredGraph.from_edges(
        n, [(u, v, c) for (u, v), c in zip(pairs, colors)], palette
    )


def greedy_packed_family(n: int, count: int):
    """First `count` 4-subsets of [n], in lexicographic order, that pairwise
    intersect in at most one vertex (test fixture helper)."""
    from itertools import combinations

    kept = []
    for cand in combinations(range(n), 4):
        s = frozenset(cand)
        if all(len(s & k) <= 1 for k in kept):
            kept.append(s)
            if len(kept) == count:
                return kept
    raise AssertionError(f"no packing of {count} sets in [{n}]")


@pytest.fixture
def triangle():
    return ColoredGraph.from_edges(3, [(0, 1, 1), (0, 2, 1), (1, 2, 2)], 2)
