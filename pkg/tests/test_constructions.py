import math
import random

import pytest

from conftest import greedy_packed_family
from exactcolor import constructions as cons
from exactcolor import graphcore as gc
from exactcolor import oracle
from exactcolor.cliquecolor import CliqueColoringSpec, random_colorful_coloring
from exactcolor.errors import (
    EdgeConflict,
    InvalidInput,
    NotSpecialCase,
    NTooSmall,
    PreconditionViolated,
)
from exactcolor.foursets import FourSetFamily


class TestDecompositions:
    def test_binom_examples(self):
        assert cons.decompose_binom(10) == (5, 0)
        assert cons.decompose_binom(12) == (6, 3)
        assert cons.decompose_binom(11) == (6, 4)

    def test_parity_examples(self):
        assert cons.parity_fix(5, 0) == (5, 0)
        assert cons.parity_fix(6, 3) == (8, 16)
        assert cons.parity_fix(6, 4) == (6, 4)

    def test_m_examples(self):
        assert cons.decompose_m(11) == (5, 0)
        assert cons.decompose_m(12) == (6, 4)
        for k in range(3, 30):
            assert cons.decompose_m(math.comb(k, 2) + 1) == (k, 0)

    def test_sweep(self):
        # full reconstruction sweep is in the acceptance suite; spot-check here
        for c in range(1, 2000):
            r, p = cons.decompose_binom(c)
            assert math.comb(r, 2) - p == c and 0 <= p < r - 1
            r1, pe = cons.parity_fix(r, p)
            assert pe % 2 == 0 and math.comb(r1, 2) - pe == c
        for m in range(2, 2000):
            k, q = cons.decompose_m(m)
            assert math.comb(k, 2) + 1 - q == m and 0 <= q <= k - 2


class TestBipartiteParams:
    def test_desk_instance(self):
        p = cons.bipartite_params(105, 100, force=True)
        assert (p.t, p.s_t, p.p1, p.eps, p.n, p.r_resid) == (7, 420, 2, 2, 4, 1)
        assert p.q_mod == 105 and p.x == 77 and p.d == 309
        assert p.feasible is False

    def test_precondition(self):
        with pytest.raises(PreconditionViolated):
            cons.bipartite_params(105, 100, force=False)
        # the threshold only exceeds m itself once log(m) > 16, so a
        # force-free call needs m beyond e^16
        p = cons.bipartite_params(10_000_100, 10_000_000, force=False)
        assert p.c == 10_000_100

    def test_large_instance_assertions(self):
        # all divisibility/congruence postconditions are asserted internally
        p = cons.bipartite_params(1_050_000_000, 1_000_000_000, force=True)
        assert (p.c - p.r_resid) % p.n == 0
        assert (p.c - p.m) % p.n != 0
        assert (p.m - p.r_resid) % p.n != 0
        assert (p.m - p.r_resid - p.n * p.x - 1) % p.q_mod == 0
        assert 0 <= p.x < p.q_mod
        if p.feasible:
            assert p.c == p.n * p.b + p.d


class TestPairedColors:
    def family(self, n, count):
        return FourSetFamily(n=n, sets=tuple(greedy_packed_family(n, count)))

    def test_single_pair_census(self):
        fam = FourSetFamily(6, (frozenset({1, 2, 3, 4}),))
        g = cons.build_paired_colors(6, fam, 1)
        assert g.palette == 13
        assert gc.color_census(g, {1, 2, 3, 4}).count == 4
        assert gc.color_census(g, set(range(6))).count == 13

    def test_rainbow_when_no_pairs(self):
        g = cons.build_paired_colors(5, FourSetFamily(5, ()), 0)
        assert g.palette == math.comb(5, 2)
        assert len(set(g.edges.values())) == g.palette

    def test_census_law_exhaustive(self):
        # census(S) = C(|S|, 2) - 2 * #contained sets, and is == C(|S|,2) mod 2
        n, pairs = 12, 4
        fam = self.family(n, pairs)
        g = cons.build_paired_colors(n, fam, pairs)
        set_masks = [sum(1 << v for v in s) for s in fam.sets[:pairs]]
        for mask, cbits in oracle._stream_scan(g):
            size = mask.bit_count()
            contained = sum(1 for sm in set_masks if mask & sm == sm)
            expected = math.comb(size, 2) - 2 * contained
            assert cbits.bit_count() == expected
            assert cbits.bit_count() % 2 == math.comb(size, 2) % 2

    def test_paired_color_coupling(self):
        # color 2i appears on >= 2 edges of G[S] iff color 2i-1 does,
        # iff the i-th 4-set is inside S
        rng = random.Random(4)
        n, pairs = 12, 4
        fam = self.family(n, pairs)
        g = cons.build_paired_colors(n, fam, pairs)
        for _ in range(200):
            s = set(rng.sample(range(n), rng.randint(0, n)))
            for i in range(1, pairs + 1):
                inside = fam.sets[i - 1] <= s
                for color in (2 * i - 1, 2 * i):
                    uses = sum(
                        1 for (u, v), c in g.edges.items()
                        if c == color and u in s and v in s
                    )
                    assert (uses >= 2) == inside

    def test_precondition_checks(self):
        fam = FourSetFamily(6, (frozenset({1, 2, 3, 4}),))
        with pytest.raises(InvalidInput):
            cons.build_paired_colors(6, fam, 2)


class TestBipartiteClique:
    def test_small(self):
        inner = gc.ColoredGraph.from_edges(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)], 1)
        g = cons.build_bipartite_clique(2, 3, inner)
        assert g.palette == 7
        assert gc.color_census(g, set(range(5))).count == 7
        # the independent side spans no edges
        assert gc.color_census(g, {0, 1}).count == 0

    def test_tiny(self):
        inner = gc.ColoredGraph.from_edges(2, [(0, 1, 1)], 1)
        g = cons.build_bipartite_clique(1, 2, inner)
        assert g.palette == 3

    def test_cross_colors_distinct(self):
        inner, _ = random_colorful_coloring(CliqueColoringSpec(k=2, l=4, s=6, seed=2))
        g = cons.build_bipartite_clique(3, 6, inner)
        cross = [c for (u, v), c in g.edges.items() if u < 3]
        assert sorted(cross) == list(range(1, 19))
        assert g.palette == 20

    def test_shape_mismatch(self):
        inner = gc.ColoredGraph.from_edges(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)], 1)
        with pytest.raises(InvalidInput):
            cons.build_bipartite_clique(2, 4, inner)


class TestToyBipartite:
    def test_search_finds_witness(self):
        a, b, d, m, g = cons.find_toy_bipartite_witness(seed=1)
        assert a <= 4 and b <= 12 and d <= 3
        assert oracle.verify_witness(g, m).verified


class TestSpecialCase:
    def test_15_12(self):
        g = cons.build_special_q(15, 12)
        assert g.n == 6 and g.palette == 14
        assert oracle.verify_witness(g, 11).verified

    def test_13_12_conflicts_both_variants(self):
        for variant in ("literal", "disjoint"):
            with pytest.raises(EdgeConflict):
                cons.build_special_q(13, 12, variant=variant)

    def test_odd_q_rejected(self):
        # m = 13 has (k, q) = (6, 3): q odd
        with pytest.raises(NotSpecialCase):
            cons.build_special_q(20, 13)

    def test_q_below_k_minus_2_rejected(self):
        # m = 16 = C(6,2)+1: q = 0 < k-2
        with pytest.raises(NotSpecialCase):
            cons.build_special_q(20, 16)


class TestSearch:
    def test_12_11_6(self):
        res = cons.search_witness(12, 11, 6, seed=1)
        assert res is not None
        assert res.oracle_calls <= 1000
        assert oracle.verify_witness(res.graph, 11).verified

    def test_impossible_same_c_m(self):
        with pytest.raises(InvalidInput):
            cons.search_witness(12, 12, 6, seed=1)

    def test_14_11_6(self):
        res = cons.search_witness(14, 11, 6, seed=2, budget=500)
        if res is not None:
            assert oracle.verify_witness(res.graph, 11).verified

    def test_deterministic(self):
        r1 = cons.search_witness(12, 11, 6, seed=5)
        r2 = cons.search_witness(12, 11, 6, seed=5)
        assert r1.graph == r2.graph


class TestLifts:
    def edge(self):
        return gc.ColoredGraph.from_edges(2, [(0, 1, 1)], 1)

    def test_total_colors(self):
        assert cons.lift_one(self.edge()).total_colors == 2
        assert cons.lift_two(self.edge()).total_colors == 3

    def test_truncate_mode_one(self):
        g = cons.truncate(cons.lift_one(self.edge()), 4)
        assert g.edges[(0, 1)] == 1
        assert all(g.edges[e] == 2 for e in g.edges if e != (0, 1))
        gc.validate_exact(g)

    def test_truncate_mode_two(self):
        g = cons.truncate(cons.lift_two(self.edge()), 4)
        assert g.edges[(0, 1)] == 1
        assert g.edges[(2, 3)] == 3
        assert all(g.edges[e] == 2 for e in [(0, 2), (0, 3), (1, 2), (1, 3)])

    def test_truncate_missing_inner_pairs(self):
        # base with a missing pair inside its own vertex set
        base = gc.ColoredGraph.from_edges(3, [(0, 1, 1), (1, 2, 2)], 2)
        one = cons.truncate(cons.lift_one(base), 5)
        assert one.edges[(0, 2)] == 3
        two = cons.truncate(cons.lift_two(base), 5)
        assert two.edges[(0, 2)] == 4  # missing-inside gets the second color
        assert two.edges[(0, 3)] == 3

    def test_truncate_too_small(self):
        with pytest.raises(NTooSmall):
            cons.truncate(cons.lift_one(self.edge()), 3)

    def test_truncate_always_exact(self):
        rng = random.Random(8)
        from conftest import random_exact_graph

        for _ in range(20):
            base = random_exact_graph(rng, max_n=7)
            for lift in (cons.lift_one(base), cons.lift_two(base)):
                gc.validate_exact(cons.truncate(lift, base.n + 3))

    def test_lift_soundness_bridge(self):
        # for every S in the base plus one fresh vertex, the truncated
        # mode-one census is the base census plus one
        base = cons.build_special_q(15, 12)
        trunc = cons.truncate(cons.lift_one(base), base.n + 2)
        fresh = base.n  # first fresh vertex
        for mask, cbits in oracle._stream_scan(base):
            if mask == 0:
                continue  # a lone fresh vertex spans no edges
            s = [v for v in range(base.n) if mask >> v & 1]
            census_lifted = gc.color_census(trunc, set(s) | {fresh}).count
            assert census_lifted == cbits.bit_count() + 1
