import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_exact_graph
from exactcolor import graphcore as gc
from exactcolor import oracle
from exactcolor.errors import MInvalid, TooLarge


def census_bruteforce(g, subset):
    # from-scratch reference, independent of the incremental scan
    return len({c for (u, v), c in g.edges.items() if u in subset and v in subset})


class TestFind:
    def test_triangle(self, triangle):
        found, scanned = oracle.find_exactly_m_subset(triangle, 2)
        assert found == (0, 1, 2)
        assert scanned == 8

    def test_above_palette(self, triangle):
        found, _ = oracle.find_exactly_m_subset(triangle, 5)
        assert found is None

    def test_k6_12_coloring(self):
        # any exact 12-coloring of K_6: proper subsets carry <= 10 colors,
        # the full set carries 12, so 11 is never attained
        rng = random.Random(0)
        edges = list(combinations(range(6), 2))
        colors = list(range(1, 13)) + [rng.randint(1, 12) for _ in range(3)]
        rng.shuffle(colors)
        g = gc.ColoredGraph.from_edges(6, [(u, v, c) for (u, v), c in zip(edges, colors)], 12)
        found, _ = oracle.find_exactly_m_subset(g, 11)
        assert found is None

    def test_minimality(self):
        # two disjoint monochromatic edges: subsets {0,1} (mask 3) and {2,3}
        # (mask 12) both have census 1; the smaller bitmask must win
        g = gc.ColoredGraph.from_edges(4, [(0, 1, 1), (2, 3, 1)], 1)
        found, _ = oracle.find_exactly_m_subset(g, 1)
        assert found == (0, 1)

    def test_guards(self, triangle):
        with pytest.raises(MInvalid):
            oracle.find_exactly_m_subset(triangle, 0)
        big = gc.ColoredGraph.from_edges(31, [(0, 1, 1)], 1)
        with pytest.raises(TooLarge):
            oracle.find_exactly_m_subset(big, 1)


class TestVerify:
    def test_special_case_witness(self):
        from exactcolor.constructions import build_special_q

        report = oracle.verify_witness(build_special_q(15, 12), 11)
        assert report.verified
        assert report.subsets_scanned == 64

    def test_rainbow_k4_refuted(self):
        edges = [(u, v, i + 1) for i, (u, v) in enumerate(combinations(range(4), 2))]
        g = gc.ColoredGraph.from_edges(4, edges, 6)
        report = oracle.verify_witness(g, 3)
        assert not report.verified
        assert report.counterexample == (0, 1, 2)


class TestLifted:
    def test_mode_one_matches_base(self, triangle):
        for m in range(2, 5):
            lifted = oracle.verify_lifted(triangle, m, "one")
            base = oracle.verify_witness(triangle, m - 1)
            assert lifted.same_result(base)

    def test_mode_two_full_set(self, triangle):
        # m = palette + 2: refuted by the full vertex set
        report = oracle.verify_lifted(triangle, triangle.palette + 2, "two")
        assert not report.verified

    def test_single_edge_mode_one(self):
        g = gc.ColoredGraph.from_edges(2, [(0, 1, 1)], 1)
        assert not oracle.verify_lifted(g, 2, "one").verified

    def test_guards(self, triangle):
        with pytest.raises(MInvalid):
            oracle.verify_lifted(triangle, 1, "one")
        with pytest.raises(MInvalid):
            oracle.verify_lifted(triangle, 2, "two")
        with pytest.raises(MInvalid):
            oracle.verify_lifted(triangle, 3, "three")


class TestHistogram:
    def test_triangle(self, triangle):
        assert oracle.census_histogram(triangle) == {0: 4, 1: 3, 2: 1}

    def test_single_edge(self):
        g = gc.ColoredGraph.from_edges(2, [(0, 1, 1)], 1)
        assert oracle.census_histogram(g) == {0: 3, 1: 1}

    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_total_and_full(self, seed):
        g = random_exact_graph(random.Random(seed), max_n=10)
        hist = oracle.census_histogram(g)
        assert sum(hist.values()) == 2**g.n
        assert hist[g.palette] >= 1

    @given(st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_consistency_with_verify(self, seed):
        g = random_exact_graph(random.Random(seed), max_n=8)
        hist = oracle.census_histogram(g)
        for m in range(1, g.palette + 1):
            assert oracle.verify_witness(g, m).verified == (hist.get(m, 0) == 0)


class TestIncremental:
    @given(st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_matches_bruteforce(self, seed):
        rng = random.Random(seed)
        g = random_exact_graph(rng, max_n=9)
        colors = oracle._color_masks_dp(g)
        for _ in range(20):
            mask = rng.randrange(1 << g.n)
            subset = {v for v in range(g.n) if mask >> v & 1}
            assert colors[mask].bit_count() == census_bruteforce(g, subset)

    def test_stream_matches_dp(self):
        rng = random.Random(5)
        for _ in range(10):
            g = random_exact_graph(rng, max_n=8)
            dp = oracle._color_masks_dp(g)
            streamed = dict(oracle._stream_scan(g))
            assert streamed == {mask: c for mask, c in enumerate(dp)}


class TestParallel:
    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_reports_identical(self, seed):
        rng = random.Random(seed)
        g = random_exact_graph(rng, max_n=9)
        m = rng.randint(1, g.palette)
        serial = oracle.verify_witness(g, m, threads=1)
        parallel = oracle.verify_witness(g, m, threads=4)
        assert serial.same_result(parallel)

    def test_histogram_identical(self):
        rng = random.Random(11)
        for _ in range(5):
            g = random_exact_graph(rng, max_n=9)
            assert oracle.census_histogram(g) == oracle.census_histogram(g, threads=4)
