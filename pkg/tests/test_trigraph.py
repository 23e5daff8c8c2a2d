import itertools
import random

import pytest

from twinwidth.trigraph import (
    BLACK,
    NONE,
    RED,
    ContractionSequence,
    ContractionStep,
    ParallelSequence,
    ParallelStep,
    SplitSpec,
    Trigraph,
    TrigraphError,
    apply_parallel,
    contract,
    greedy_parallel_sequence,
    max_red_degree,
    parallel_trace,
    sequentialize,
    split,
    split_spec_of,
    verify_parallel,
    verify_sequence,
)

from helpers import random_graph, random_trigraph, random_cograph, first_parallel_sequence


def fig1_instance():
    """13-vertex configuration: u, v with mixed black/red neighborhoods."""
    u, v = 11, 12
    u1, u2 = 0, 1
    x = {i: 1 + i for i in range(1, 8)}
    v1, v2 = 9, 10
    black = [
        (u, u2), (u, x[1]), (u, x[3]), (u, x[4]), (u, x[6]), (u, x[7]),
        (v, x[1]), (v, x[2]), (v, x[3]), (v, x[6]), (v, x[7]), (v, v1), (v, v2),
    ]
    red = [(u, u1), (u, x[2]), (u, x[5]), (v, x[4]), (v, x[5])]
    g = Trigraph(range(13), black, red)
    return g, u, v, (u1, u2, x, v1, v2)


class TestContract:
    def test_k2_contracts_to_k1(self):
        g = Trigraph(range(2), [(0, 1)])
        g2, w = contract(g, 0, 1)
        assert g2.n == 1 and w == 0
        assert not g2.red_edges and not g2.black_edges

    def test_false_twins_stay_black(self):
        # P3 a-b-c: a and c are false twins
        g = Trigraph.path(3)
        g2, w = contract(g, 0, 2)
        assert g2.black_edges == frozenset({(0, 1)})
        assert not g2.red_edges

    def test_fig1_configuration(self):
        g, u, v, (u1, u2, x, v1, v2) = fig1_instance()
        g2, w = contract(g, u, v)
        assert g2.red_neighbors(w) == frozenset({u1, u2, x[2], x[4], x[5], v1, v2})
        assert g2.black_neighbors(w) == frozenset({x[1], x[3], x[6], x[7]})
        assert max_red_degree(g2) == 7

    def test_symmetric_in_arguments(self):
        rng = random.Random(0)
        for _ in range(50):
            g = random_trigraph(rng.randint(2, 9), rng)
            vs = sorted(g.vertices)
            u, v = rng.sample(vs, 2)
            a, wa = contract(g, u, v)
            b, wb = contract(g, v, u)
            assert a == b and wa == wb == min(u, v)

    def test_errors(self):
        g = Trigraph.path(3)
        with pytest.raises(TrigraphError):
            contract(g, 0, 0)
        with pytest.raises(TrigraphError):
            contract(g, 0, 7)

    def test_single_vertex_contraction_is_error(self):
        g = Trigraph.empty(1)
        with pytest.raises(TrigraphError):
            contract(g, 0, 0)

    def test_black_degree_never_increases(self):
        rng = random.Random(1)
        for _ in range(30):
            g = random_trigraph(rng.randint(3, 9), rng)
            cur = g
            while cur.n > 1:
                vs = sorted(cur.vertices)
                u, v = rng.sample(vs, 2)
                nxt, w = contract(cur, u, v)
                before = {x: cur.black_degree(x) for x in cur.vertices}
                for x in nxt.vertices:
                    if x == w:
                        assert nxt.black_degree(x) <= min(before[u], before[v])
                    else:
                        assert nxt.black_degree(x) <= before[x]
                cur = nxt


class TestMaxRedDegree:
    def test_no_reds(self):
        assert max_red_degree(Trigraph.complete(5)) == 0
        assert max_red_degree(Trigraph(())) == 0

    def test_c5_distance_two_contraction(self):
        # brute force over all first contractions of C5: distance-2 pairs
        # give red degree 2
        g = Trigraph.cycle(5)
        seen = {}
        for u, v in itertools.combinations(range(5), 2):
            g2, _ = contract(g, u, v)
            dist2 = v - u in (2, 3)  # distance 2 on the 5-cycle
            seen[(u, v)] = max_red_degree(g2)
            if dist2:
                assert seen[(u, v)] == 2
        assert min(seen.values()) == 2


class TestVerify:
    def test_k4_any_full_sequence_width_zero(self):
        g = Trigraph.complete(4)
        for perm in itertools.permutations(range(4)):
            seq = ContractionSequence.from_pairs(
                [(perm[0], perm[1]),
                 (min(perm[0], perm[1]), perm[2]),
                 (min(perm[0], perm[1], perm[2]), perm[3])]
            )
            rep = verify_sequence(g, seq)
            assert rep.valid and rep.width == 0

    def test_p4_width_one(self):
        g = Trigraph.path(4)
        seq = ContractionSequence.from_pairs([(0, 1), (2, 3), (0, 2)])
        rep = verify_sequence(g, seq)
        assert rep.valid and rep.width == 1

    def test_empty_sequence_on_k2_invalid(self):
        rep = verify_sequence(Trigraph.empty(2), ContractionSequence(()))
        assert not rep.valid

    def test_empty_sequence_on_k1_valid(self):
        rep = verify_sequence(Trigraph.empty(1), ContractionSequence(()))
        assert rep.valid and rep.width == 0

    def test_reports_first_bad_step(self):
        g = Trigraph.path(4)
        seq = ContractionSequence.from_pairs([(0, 1), (1, 3), (0, 2)])
        rep = verify_sequence(g, seq)
        assert not rep.valid and rep.error_index == 1


class TestParallel:
    def test_single_pair_equals_contract(self):
        g = Trigraph.path(5)
        step = ParallelStep.of([(0, 4)])
        assert apply_parallel(g, step) == contract(g, 0, 4)[0]

    def test_overlapping_pairs_rejected(self):
        with pytest.raises(TrigraphError):
            ParallelStep.of([(0, 1), (1, 2)])

    def test_order_independence_exhaustive(self):
        rng = random.Random(2)
        for _ in range(12):
            g = random_trigraph(10, rng)
            vs = sorted(g.vertices)
            rng.shuffle(vs)
            pairs = [(vs[2 * i], vs[2 * i + 1]) for i in range(4)]
            step = ParallelStep.of(pairs)
            expected = apply_parallel(g, step)
            for perm in itertools.permutations(pairs):
                cur = g
                for u, v in perm:
                    cur, _ = contract(cur, u, v)
                assert cur == expected

    def test_lift_style_step_recovers_base_shape(self):
        from twinwidth.families import Signing, two_lift

        k4 = Trigraph.complete(4)
        rng = random.Random(3)
        lifted = two_lift(k4, Signing.random(k4, rng))
        step = ParallelStep.of([(2 * v, 2 * v + 1) for v in range(4)])
        merged = apply_parallel(lifted, step)
        assert merged.n == 4
        # every K4 edge survives as an edge (red, both copies collapsed)
        assert {tuple(sorted((u // 2, v // 2))) for u, v in merged.red_edges | merged.black_edges} == set(
            k4.black_edges
        )


class TestSequentialize:
    def test_twin_steps_give_width_at_most_one(self):
        g = random_cograph(16, random.Random(4))
        pseq = greedy_parallel_sequence(g, 0)
        assert pseq is not None
        seq = sequentialize(g, pseq)
        rep = verify_sequence(g, seq)
        assert rep.valid and rep.width <= 1

    def test_prop_bound_on_random_graphs(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_graph(rng.randint(2, 10), rng.random(), rng)
            pseq = first_parallel_sequence(g)
            d = verify_parallel(g, pseq).width
            seq = sequentialize(g, pseq)
            rep = verify_sequence(g, seq)
            assert rep.valid and rep.width <= 2 * d + 1

    def test_invalid_parallel_sequence_rejected(self):
        g = Trigraph.path(4)
        bad = ParallelSequence.of([[(0, 1)]])  # does not reach K1
        with pytest.raises(TrigraphError):
            sequentialize(g, bad)


class TestSplit:
    def test_round_trip_random(self):
        rng = random.Random(6)
        for _ in range(200):
            g = random_trigraph(rng.randint(2, 9), rng)
            u, v = rng.sample(sorted(g.vertices), 2)
            spec = split_spec_of(g, u, v)
            contracted, w = contract(g, u, v)
            restored = split(contracted, w, spec)
            assert restored == g
            again, w2 = contract(restored, u, v)
            assert again == contracted and w2 == w

    def test_isolated_vertex_split(self):
        g = Trigraph.empty(3)
        out = split(g, 0, SplitSpec(u=0, v=3, uv=NONE))
        assert out.vertices == frozenset({0, 1, 2, 3})
        assert not out.black_edges and not out.red_edges

    def test_fig1_split_restores_left_side(self):
        g, u, v, _ = fig1_instance()
        spec = split_spec_of(g, u, v)
        contracted, w = contract(g, u, v)
        assert split(contracted, w, spec) == g

    def test_rejects_non_red_neighbor_in_spec(self):
        g, _ = contract(Trigraph.path(3), 0, 1)  # 0-2 red... build explicit
        g = Trigraph(range(3), [(0, 1)], [(0, 2)])
        with pytest.raises(TrigraphError):
            split(g, 0, SplitSpec(u=0, v=5, uv=NONE, reds=((1, BLACK, RED),)))

    def test_rejects_contradictory_relations(self):
        g = Trigraph(range(2), (), [(0, 1)])
        with pytest.raises(TrigraphError):
            split(g, 0, SplitSpec(u=0, v=2, uv=NONE, reds=((1, BLACK, BLACK),)))


class TestGreedyParallel:
    def test_cograph_at_zero(self):
        g = random_cograph(14, random.Random(7))
        pseq = greedy_parallel_sequence(g, 0)
        assert pseq is not None
        assert verify_parallel(g, pseq).width == 0

    def test_path16_with_slack(self):
        g = Trigraph.path(16)
        pseq = greedy_parallel_sequence(g, 2)
        assert pseq is not None
        rep = verify_parallel(g, pseq)
        assert rep.valid and rep.width <= 2

    def test_cubic_random_fails_at_one(self):
        rng = random.Random(8)
        g = _random_cubic(20, rng)
        # minimum first-contraction red degree exceeds 1
        best = min(
            max_red_degree(contract(g, u, v)[0])
            for u, v in itertools.combinations(sorted(g.vertices), 2)
        )
        assert best > 1
        assert greedy_parallel_sequence(g, 1) is None

    def test_deterministic_for_fixed_seed(self):
        g = Trigraph.path(12)
        assert greedy_parallel_sequence(g, 2) == greedy_parallel_sequence(g, 2)


def _random_cubic(n: int, rng: random.Random) -> Trigraph:
    # repeated pairing attempts until a simple 3-regular graph emerges
    while True:
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a == b or (min(a, b), max(a, b)) in edges:
                ok = False
                break
            edges.add((min(a, b), max(a, b)))
        if ok:
            return Trigraph(range(n), edges)
