"""Witness builders and reductions: the bipartite + inner-clique witness and
its number-theoretic parameter pipeline, the paired-4-set coloring, the even
q = k-2 special case, randomized local search as a fallback, and the one- and
two-color lifts to the infinite complete graph (materialized by truncation).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

from . import numtheory as nt
from .errors import (
    EdgeConflict,
    InvalidInput,
    NotSpecialCase,
    NTooSmall,
    PairOverlap,
    PreconditionViolated,
)
from .foursets import FourSetFamily
from .graphcore import ColoredGraph, validate_exact
from .oracle import count_exactly_m, verify_witness


# ---------------------------------------------------------------------------
# binomial decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    c: int
    r_prime: int
    p_prime: int
    r1: int
    p_even: int
    k: int
    q: int
    m: int


def decompose_binom(c: int) -> tuple[int, int]:
    """Unique (r', p') with c = C(r', 2) - p' and 0 <= p' < r' - 1
    (r' minimal with C(r', 2) >= c)."""
    if c < 1:
        raise InvalidInput("c must be >= 1")
    # smallest r with r(r-1)/2 >= c, from the quadratic formula
    r = max(2, (1 + math.isqrt(8 * c - 7)) // 2)
    while math.comb(r, 2) < c:
        r += 1
    p = math.comb(r, 2) - c
    assert 0 <= p < r - 1
    return r, p


def parity_fix(r_prime: int, p_prime: int) -> tuple[int, int]:
    """Make the defect even while preserving C(r1, 2) - p_even."""
    if p_prime % 2 == 0:
        return r_prime, p_prime
    r1 = r_prime + 2
    p_even = p_prime + 2 * r_prime + 1
    assert p_even % 2 == 0
    assert math.comb(r1, 2) - p_even == math.comb(r_prime, 2) - p_prime
    return r1, p_even


def decompose_m(m: int) -> tuple[int, int]:
    """Unique (k, q) with m = C(k, 2) + 1 - q and 0 <= q <= k - 2
    (k minimal with C(k, 2) + 1 >= m)."""
    if m < 2:
        raise InvalidInput("m must be >= 2")
    # smallest k with k(k-1)/2 >= m - 1
    k = max(2, (1 + math.isqrt(8 * m - 15)) // 2 if m > 2 else 2)
    while math.comb(k, 2) + 1 < m:
        k += 1
    q = math.comb(k, 2) + 1 - m
    assert 0 <= q <= k - 2
    return k, q


def decompose(c: int, m: int) -> Decomposition:
    r_prime, p_prime = decompose_binom(c)
    r1, p_even = parity_fix(r_prime, p_prime)
    k, q = decompose_m(m)
    return Decomposition(c=c, r_prime=r_prime, p_prime=p_prime,
                         r1=r1, p_even=p_even, k=k, q=q, m=m)


# ---------------------------------------------------------------------------
# number-theoretic parameter pipeline for the bipartite witness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteParams:
    c: int
    m: int
    t: int
    s_t: int
    p1: int
    eps: int
    n: int
    r_resid: int
    q_mod: int
    x: int
    b: int
    d: int
    feasible: bool


def bipartite_params(c: int, m: int, force: bool = False) -> BipartiteParams:
    """Run the full parameter pipeline: smallest t, prime-power selection,
    residue, and the CRT solve for x.  Every derived divisibility fact is
    asserted before returning."""
    if not (c > m >= 3):
        raise InvalidInput("need c > m >= 3")
    if not force and not c < m * math.log(m) ** 0.25 / 2:
        raise PreconditionViolated(
            f"c = {c} is not below the threshold for m = {m}; pass force to override"
        )
    t = nt.smallest_t(m)
    s_t = nt.s_of_l(t)
    p1, eps, n, r = nt.select_prime_power(s_t, t, c, m)
    q_mod = 1
    small_primes = nt.primes_up_to(t).primes
    for p in small_primes:
        if p != p1:
            q_mod *= p
    x = nt.solve_x(n, (m - r - 1) % q_mod, q_mod)
    d = r + n * x
    assert (c - r) % n == 0
    assert (c - m) % n != 0
    assert (m - r) % n != 0
    assert 0 <= x < q_mod
    assert (m - r - n * x - 1) % q_mod == 0
    for p in small_primes:
        if p != p1:
            assert (m - r - n * x) % p == 1
    b = (c - r - n * x) // n
    feasible = b >= 1 and d < c
    if feasible:
        assert c == n * b + d
    return BipartiteParams(c=c, m=m, t=t, s_t=s_t, p1=p1, eps=eps, n=n,
                           r_resid=r, q_mod=q_mod, x=x, b=b, d=d,
                           feasible=feasible)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_paired_colors(n: int, family: FourSetFamily, pairs: int) -> ColoredGraph:
    """Complete K_n where, for each of the first `pairs` 4-sets
    {a < b < c < d}, color 2i-1 sits on edges ab, cd and color 2i on ac, bd;
    every remaining edge gets a fresh color in lexicographic edge order.
    Palette is C(n, 2) - 2 * pairs."""
    if pairs > len(family.sets):
        raise InvalidInput("pairs exceeds family size")
    if 2 * pairs > 3 * n:
        raise InvalidInput("need 2 * pairs <= 3n")
    if family.n > n:
        raise InvalidInput("family ground set exceeds n")
    coloring: dict[tuple[int, int], int] = {}
    for i in range(1, pairs + 1):
        a, b, c, d = sorted(family.sets[i - 1])
        for e, color in (((a, b), 2 * i - 1), ((c, d), 2 * i - 1),
                         ((a, c), 2 * i), ((b, d), 2 * i)):
            if e in coloring:
                raise PairOverlap(f"edge {e} already colored (family not <=1-intersecting?)")
            coloring[e] = color
    fresh = 2 * pairs
    for e in combinations(range(n), 2):
        if e not in coloring:
            fresh += 1
            coloring[e] = fresh
    palette = math.comb(n, 2) - 2 * pairs
    assert fresh == palette
    return ColoredGraph.from_edges(n, [(u, v, c) for (u, v), c in coloring.items()], palette)


def build_bipartite_clique(a: int, b: int, inner: ColoredGraph) -> ColoredGraph:
    """Graph on a + b vertices: the first a vertices are pairwise
    non-adjacent, all a*b cross edges get distinct colors 1..ab, and the
    remaining clique is colored by `inner` shifted up by ab."""
    if a < 1 or b < 1:
        raise InvalidInput("need a, b >= 1")
    if inner.n != b:
        raise InvalidInput(f"inner graph must have {b} vertices")
    if len(inner.edges) != math.comb(b, 2):
        raise InvalidInput("inner graph must be complete")
    validate_exact(inner)
    d = inner.palette
    edges = []
    color = 0
    for v in range(a):
        for w in range(b):
            color += 1
            edges.append((v, a + w, color))
    assert color == a * b
    for (u, v), c in inner.edges.items():
        edges.append((a + u, a + v, a * b + c))
    return ColoredGraph.from_edges(a + b, edges, a * b + d)


def build_special_q(c: int, m: int, variant: str = "literal") -> ColoredGraph:
    """The even q = k-2 branch: K_n (n minimal with C(n, 2) >= c - 1) on
    c - 1 colors where color i covers the two edges of the i-th pair family
    along the cyclic vertex order.

    variant "literal": pair i = {x_i x_{i+1}, x_{i+1} x_{i+2}} (two incident
    edges); variant "disjoint": {x_i x_{i+1}, x_{i+2} x_{i+3}}.  Indices wrap
    cyclically.  If two pair families claim the same edge the builder fails
    loudly with EdgeConflict (never silently overwrites)."""
    if not c > m:
        raise InvalidInput("need c > m")
    k, q = decompose_m(m)
    if q % 2 != 0 or q != k - 2:
        raise NotSpecialCase(f"(c={c}, m={m}) has (k, q) = ({k}, {q}), not even q = k-2")
    if variant not in ("literal", "disjoint"):
        raise InvalidInput(f"unknown variant {variant!r}")
    c_prime = c - 1
    n = 2
    while math.comb(n, 2) < c_prime:
        n += 1
    num_pairs = math.comb(n, 2) - c_prime

    def cyc(i: int) -> int:
        return i % n

    coloring: dict[tuple[int, int], int] = {}
    for i in range(1, num_pairs + 1):
        # vertices x_1..x_n map to 0..n-1
        if variant == "literal":
            pair = [(cyc(i - 1), cyc(i)), (cyc(i), cyc(i + 1))]
        else:
            pair = [(cyc(i - 1), cyc(i)), (cyc(i + 1), cyc(i + 2))]
        for u, v in pair:
            e = (u, v) if u < v else (v, u)
            if e in coloring:
                raise EdgeConflict(e, (coloring[e], i))
            coloring[e] = i
    fresh = num_pairs
    for e in combinations(range(n), 2):
        if e not in coloring:
            fresh += 1
            coloring[e] = fresh
    assert fresh == c_prime
    return ColoredGraph.from_edges(n, [(u, v, col) for (u, v), col in coloring.items()], c_prime)


def build_toy_bipartite(a: int, b: int, d: int, seed: int) -> ColoredGraph:
    """Small-scale bipartite + inner-clique witness: rainbow cross edges over
    an inner complete graph on d colors.  For d > 1 the inner coloring is the
    first colorful one found over increasing subset sizes l."""
    from .cliquecolor import CliqueColoringSpec, random_colorful_coloring
    from .errors import RetriesExhausted

    if d == 1:
        inner = ColoredGraph.from_edges(
            b, [(u, v, 1) for u, v in combinations(range(b), 2)], 1
        )
    else:
        inner = None
        for l in range(max(2, d), b + 1):
            try:
                inner, _ = random_colorful_coloring(
                    CliqueColoringSpec(k=d, l=l, s=b, seed=seed, max_retries=16)
                )
                break
            except RetriesExhausted:
                continue
        if inner is None:
            raise RetriesExhausted(f"no colorful inner coloring for (d={d}, b={b})")
    return build_bipartite_clique(a, b, inner)


def find_toy_bipartite_witness(seed: int, max_a: int = 4, max_b: int = 12,
                               max_d: int = 3) -> tuple[int, int, int, int, ColoredGraph]:
    """Scan small (a, b, d) instances for a census value m that no induced
    subgraph attains; returns the first (a, b, d, m, graph) found, with the
    graph already oracle-verified."""
    from .errors import RetriesExhausted
    from .oracle import census_histogram

    for a in range(1, max_a + 1):
        for b in range(2, max_b + 1):
            for d in range(1, min(max_d, math.comb(b, 2)) + 1):
                try:
                    g = build_toy_bipartite(a, b, d, seed)
                except RetriesExhausted:
                    continue
                hist = census_histogram(g)
                for m in range(3, g.palette):
                    if hist.get(m, 0) == 0:
                        assert verify_witness(g, m).verified
                        return a, b, d, m, g
    raise RetriesExhausted("no toy bipartite witness in the scanned range")


# ---------------------------------------------------------------------------
# randomized local search fallback
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    graph: ColoredGraph
    oracle_calls: int
    restarts: int


RESTART_STALLS = 10**4


def search_witness(c_prime: int, m_prime: int, n: int, seed: int,
                   budget: int = 10**3) -> SearchResult | None:
    """Randomized local search over exact c'-colorings of K_n for one with
    no exactly-m'-colored subset.  Moves recolor a single edge while keeping
    every color in use; strictly improving moves are accepted and the state
    restarts after too many stalls.  Budget counts oracle invocations.
    Any returned witness has been re-verified by the oracle."""
    if not c_prime > m_prime >= 1:
        raise InvalidInput("need c' > m' >= 1")
    edges = list(combinations(range(n), 2))
    if len(edges) < c_prime:
        raise InvalidInput(f"C({n},2) < {c_prime}: not enough edges")
    rng = random.Random(seed)

    def random_exact() -> list[int]:
        colors = list(range(1, c_prime + 1))
        colors += [rng.randrange(1, c_prime + 1) for _ in range(len(edges) - c_prime)]
        rng.shuffle(colors)
        return colors

    def as_graph(colors: list[int]) -> ColoredGraph:
        return ColoredGraph.from_edges(
            n, [(u, v, col) for (u, v), col in zip(edges, colors)], c_prime
        )

    calls = 0
    restarts = 0
    colors = random_exact()
    usage = [0] * (c_prime + 1)
    for col in colors:
        usage[col] += 1
    score = count_exactly_m(as_graph(colors), m_prime)
    calls += 1
    stalls = 0
    while calls < budget:
        if score == 0:
            g = as_graph(colors)
            report = verify_witness(g, m_prime)
            calls += 1
            if report.verified:
                return SearchResult(graph=g, oracle_calls=calls, restarts=restarts)
            score = count_exactly_m(g, m_prime)  # should be unreachable
            continue
        if stalls >= RESTART_STALLS:
            restarts += 1
            colors = random_exact()
            usage = [0] * (c_prime + 1)
            for col in colors:
                usage[col] += 1
            score = count_exactly_m(as_graph(colors), m_prime)
            calls += 1
            stalls = 0
            continue
        idx = rng.randrange(len(edges))
        old = colors[idx]
        if usage[old] < 2:
            stalls += 1
            continue  # recoloring would orphan a color
        new = rng.randrange(1, c_prime + 1)
        if new == old:
            stalls += 1
            continue
        colors[idx] = new
        usage[old] -= 1
        usage[new] += 1
        cand = count_exactly_m(as_graph(colors), m_prime)
        calls += 1
        if cand < score:
            score = cand
            stalls = 0
        else:
            colors[idx] = old
            usage[old] += 1
            usage[new] -= 1
            stalls += 1
    return None


# ---------------------------------------------------------------------------
# lifts and truncation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftedColoring:
    """A finite witness together with how its coloring extends to the
    infinite complete graph: mode "one" paints every uncolored pair with one
    new color; mode "two" uses one new color on pairs leaving the base vertex
    set and a second on everything else uncolored."""

    base: ColoredGraph
    mode: str

    def __post_init__(self):
        if self.mode not in ("one", "two"):
            raise InvalidInput(f"unknown lift mode {self.mode!r}")
        validate_exact(self.base)

    @property
    def total_colors(self) -> int:
        return self.base.palette + (1 if self.mode == "one" else 2)


def lift_one(base: ColoredGraph) -> LiftedColoring:
    return LiftedColoring(base=base, mode="one")


def lift_two(base: ColoredGraph) -> LiftedColoring:
    return LiftedColoring(base=base, mode="two")


def truncate(lifted: LiftedColoring, big_n: int) -> ColoredGraph:
    """Materialize the lifted coloring as a complete graph on big_n vertices
    (the base plus at least two fresh vertices, so every lift color shows up)."""
    base = lifted.base
    if big_n < base.n + 2:
        raise NTooSmall(f"need N >= {base.n + 2}")
    cp = base.palette
    edges = []
    for u, v in combinations(range(big_n), 2):
        col = base.edges.get((u, v)) if v < base.n else None
        if col is None:
            if lifted.mode == "one":
                col = cp + 1
            elif (u < base.n) != (v < base.n):
                col = cp + 1  # exactly one endpoint in the base
            else:
                col = cp + 2  # fresh-fresh or missing inside the base
        edges.append((u, v, col))
    return ColoredGraph.from_edges(big_n, edges, lifted.total_colors)
