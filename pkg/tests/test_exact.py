import itertools
import math
import random

import pytest

from twinwidth.exact import (
    CapExceededError,
    census,
    tww_decide,
    tww_decide_bfs,
    tww_exact,
    tww_sequence,
)
from twinwidth.families import gen_halfgraph_sandwich, Permutation, subdivide
from twinwidth.trigraph import Trigraph, greedy_parallel_sequence, verify_sequence

from helpers import random_graph

# oracle-derived golden values, cross-checked against the independent BFS
GOLDEN_TWW = {
    "C5": 2,
    "C6": 2,
    "B'_3": 1,
    "K4^(1)": 2,
}


class TestDecide:
    def test_cliques_are_width_zero(self):
        for n in range(1, 7):
            assert tww_decide(Trigraph.complete(n), 0)

    def test_paths(self):
        assert not tww_decide(Trigraph.path(6), 0)
        assert tww_decide(Trigraph.path(6), 1)

    def test_c5_golden(self):
        g = Trigraph.cycle(5)
        assert not tww_decide(g, 1)
        assert tww_decide(g, 2)
        assert tww_exact(g) == GOLDEN_TWW["C5"]

    def test_bfs_cross_check(self):
        rng = random.Random(0)
        for _ in range(25):
            g = random_graph(rng.randint(1, 6), rng.random(), rng)
            for d in range(0, 4):
                assert tww_decide(g, d) == tww_decide_bfs(g, d)

    def test_monotone_in_d(self):
        rng = random.Random(1)
        for _ in range(20):
            g = random_graph(rng.randint(2, 7), rng.random(), rng)
            prev = False
            for d in range(0, g.n):
                cur = tww_decide(g, d)
                assert cur or not prev
                prev = cur

    def test_cap(self):
        with pytest.raises(CapExceededError):
            tww_decide(Trigraph.path(11), 1)
        assert tww_decide(Trigraph.path(11), 1, cap=11)


class TestExact:
    def test_k1(self):
        assert tww_exact(Trigraph.empty(1)) == 0

    def test_halfgraph_sandwich_b3(self):
        g = gen_halfgraph_sandwich(3, Permutation.one_line("231"), cliques=False)
        assert tww_exact(g) == GOLDEN_TWW["B'_3"]

    def test_subdivided_k4_lower_bound(self):
        g = subdivide(Trigraph.complete(4), 1)
        d = tww_exact(g)
        assert d == GOLDEN_TWW["K4^(1)"]
        # k >= log_{d+1}(n-1) - 1 with k=1, n=4
        assert 1 >= math.log(3, d + 1) - 1

    def test_witness_sequence_matches(self):
        rng = random.Random(2)
        for _ in range(15):
            g = random_graph(rng.randint(1, 8), rng.random(), rng)
            d, seq = tww_sequence(g)
            rep = verify_sequence(g, seq)
            assert rep.valid and rep.width == d
            assert d == tww_exact(g)


class TestInvariance:
    def test_heredity_exhaustive(self):
        # every induced subgraph of a 7-vertex graph has tww at most tww(G)
        rng = random.Random(3)
        bases = [Trigraph.cycle(7), random_graph(7, 0.5, rng)]
        for g in bases:
            d = tww_exact(g)
            verts = sorted(g.vertices)
            for r in range(1, 8):
                for sub in itertools.combinations(verts, r):
                    keep = set(sub)
                    h = Trigraph(
                        keep,
                        (e for e in g.black_edges if set(e) <= keep),
                    )
                    assert tww_exact(h) <= d

    def test_isomorphism_invariance(self):
        rng = random.Random(4)
        g = random_graph(7, 0.45, rng)
        d = tww_exact(g)
        for _ in range(100):
            perm = list(range(7))
            rng.shuffle(perm)
            h = g.relabel({v: perm[v] for v in range(7)})
            assert tww_exact(h) == d

    def test_greedy_agreement(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_graph(rng.randint(2, 7), rng.random(), rng)
            for D in range(0, g.n):
                if greedy_parallel_sequence(g, D) is not None:
                    assert tww_exact(g) <= 2 * D + 1
                    break


class TestCensus:
    def test_tiny(self):
        assert census(1, 0) == 1
        assert census(2, 0) == 2

    def test_three_vertices(self):
        assert census(3, 0) == 8

    def test_against_naive_bfs_count(self):
        pairs = list(itertools.combinations(range(4), 2))
        count = 0
        for bits in range(1 << len(pairs)):
            edges = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
            if tww_decide_bfs(Trigraph.from_edges(4, edges), 0):
                count += 1
        assert census(4, 0) == count == 52

    def test_range_errors(self):
        with pytest.raises(ValueError):
            census(7, 0)
        with pytest.raises(ValueError):
            census(0, 0)
