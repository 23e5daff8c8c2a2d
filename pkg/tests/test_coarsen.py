import math
import random

import pytest

from twinwidth.coarsen import (
    COL,
    ROW,
    CoarsenParams,
    NeatDivision,
    NeatnessError,
    check_membership,
    coarsen_to,
    delete_duplicate,
    distinct_columns,
    extract_parallel_sequence,
    find_t_mixed_neat,
    greedy_coarsen,
    mixed_value,
    mixed_values,
    red_number,
    symmetric_fusion,
    versatile_tree,
)
from twinwidth.matrices import Division, TriMatrix, adjacency_matrix
from twinwidth.trigraph import Trigraph, verify_parallel

from helpers import (
    fig2_neat_division,
    random_cograph,
    random_neat_division,
    recount_mixed_value,
)


class TestNeatDivision:
    def test_fig2_is_neat(self):
        nd = fig2_neat_division()
        assert nd.mixed_zones() == {(0, 4), (3, 0), (4, 3)}
        assert nd.division.is_symmetric()
        assert not nd.matrix.symmetric  # division symmetric, matrix not

    def test_neatness_violations_detected(self):
        with pytest.raises(NeatnessError):
            NeatDivision(TriMatrix([[0, 1], [1, 0]]), Division((2,), (2,)))
        with pytest.raises(NeatnessError):
            NeatDivision(TriMatrix([[2, 1], [1, 0]]), Division((2,), (2,)))

    def test_finest_always_neat(self):
        rng = random.Random(0)
        for _ in range(20):
            n = rng.randint(1, 8)
            rows = [[rng.choice([0, 1, 2]) for _ in range(n)] for _ in range(n)]
            NeatDivision.finest(TriMatrix(rows))


class TestMixedValue:
    def test_finest_division_is_zero(self):
        # singleton parts: zones constant and no 2x2 strip fits a corner
        rng = random.Random(1)
        for _ in range(20):
            n = rng.randint(1, 8)
            rows = [[rng.choice([0, 1]) for _ in range(n)] for _ in range(n)]
            nd = NeatDivision.finest(TriMatrix(rows))
            assert mixed_value(nd) == 0

    def test_fig2_values_match_independent_recount(self):
        nd = fig2_neat_division()
        for axis in (ROW, COL):
            for part in range(5):
                assert mixed_value(nd, axis, part) == recount_mixed_value(nd, axis, part)

    def test_recount_on_random_neat_divisions(self):
        rng = random.Random(2)
        for _ in range(60):
            nd = random_neat_division(rng)
            for axis in (ROW, COL):
                parts = (
                    nd.division.n_row_parts if axis == ROW else nd.division.n_col_parts
                )
                for part in range(parts):
                    assert mixed_value(nd, axis, part) == recount_mixed_value(
                        nd, axis, part
                    )

    def test_cut_needs_two_rows(self):
        # a width-1 part cannot host a corner across a cut
        m = TriMatrix([[0, 1], [1, 0]])
        nd = NeatDivision(m, Division.finest(2, 2))
        assert mixed_value(nd, ROW, 0) == 0

    def test_cut_not_counted_next_to_mixed_zone(self):
        # row part spanning two rows, with an all-r zone adjacent to the cut
        rows = [
            [2, 0, 1],
            [2, 1, 0],
            [0, 0, 0],
        ]
        nd = NeatDivision(
            TriMatrix(rows), Division((2, 3), (1, 2, 3))
        )
        # the 0/1 corner across columns 1|2 counts; the r-zone adds one; the
        # boundary between the r-zone and column part 1 adds nothing
        assert mixed_value(nd, ROW, 0) == 2


class TestFusion:
    def test_constant_union_leaves_matrix_unchanged(self):
        rows = [
            [1, 1, 0],
            [1, 1, 0],
            [0, 0, 0],
        ]
        nd = NeatDivision(TriMatrix(rows, symmetric=True), Division((1, 2, 3), (1, 2, 3)))
        fused = symmetric_fusion(nd, 0)
        assert fused.matrix.rows == nd.matrix.rows
        assert fused.division.col_ends == (2, 3)

    def test_fig2_bold_coarsening_fills_all_nine_zones(self):
        nd = fig2_neat_division()
        filled = coarsen_to(nd, (2, 4, 8), (3, 6, 8))
        assert all(e == 2 for row in filled.matrix.rows for e in row)

    def test_fig2_three_mixed_minor_found(self):
        nd = fig2_neat_division()
        w = find_t_mixed_neat(nd, 3)
        assert w is not None
        assert w.coarsens(nd.division)

    def test_fusion_preserves_neatness_and_symmetry(self):
        rng = random.Random(3)
        for _ in range(60):
            nd = random_neat_division(rng)
            if nd.division.n_col_parts < 2:
                continue
            i = rng.randrange(nd.division.n_col_parts - 1)
            fused = symmetric_fusion(nd, i)  # constructor re-validates neatness
            assert fused.division.is_symmetric()

    def test_fusion_never_creates_mixed_minor(self):
        # single fusions preserve t-mixed freeness, t <= 3
        rng = random.Random(4)
        for _ in range(40):
            nd = random_neat_division(rng, max_n=12)
            if nd.division.n_col_parts < 2:
                continue
            frees = {t: find_t_mixed_neat(nd, t) is None for t in (2, 3)}
            i = rng.randrange(nd.division.n_col_parts - 1)
            fused = symmetric_fusion(nd, i)
            for t, free in frees.items():
                if free:
                    assert find_t_mixed_neat(fused, t) is None

    def test_column_fusion_never_raises_row_mixed_values(self):
        rng = random.Random(5)
        checked = 0
        while checked < 200:
            nd = random_neat_division(rng)
            div = nd.division
            if div.n_col_parts < 2:
                continue
            i = rng.randrange(div.n_col_parts - 1)
            before = mixed_values(nd, ROW)
            new_col_ends = tuple(e for k, e in enumerate(div.col_ends) if k != i)
            fused = coarsen_to(nd, div.row_ends, new_col_ends)
            after = mixed_values(fused, ROW)
            for p in range(div.n_row_parts):
                assert after[p] <= before[p]
            checked += 1


class TestMembership:
    def test_finest_of_plain_matrix_passes(self):
        g = Trigraph.path(12)
        m = adjacency_matrix(g, list(range(12)))
        rep = check_membership(NeatDivision.finest(m), CoarsenParams())
        assert rep.passed and rep.mixed_value == 0

    def test_red_number_bound_reported(self):
        nd = fig2_neat_division()
        p = CoarsenParams()
        rep = check_membership(nd, p)
        assert rep.red_number <= rep.red_bound == p.mv_cap * p.ps_cap
        assert not rep.symmetric  # matrix not symmetric

    def test_oversized_part_fails(self):
        m = TriMatrix([[0] * 12] * 12, symmetric=True)
        nd = NeatDivision(m, Division((12,), (12,)))
        rep = check_membership(nd, CoarsenParams(ps_cap=8, large_threshold=5))
        assert not rep.ps_ok and not rep.passed

    def test_theoretical_params_formula(self):
        p = CoarsenParams.theoretical(1)
        # 4 * c_1 = 4 * 8/3 * 4 * 16 rounded up
        assert p.mv_cap == math.ceil(4 * 8 / 3 * 4 * 16) == 683
        assert p.ps_cap == 2 ** (p.mv_cap + 2)


class TestGreedyCoarsen:
    def test_twin_columns_found_without_fusion(self):
        # identical columns pre-exist: two non-adjacent false twins
        g = Trigraph(range(4), [(0, 2), (1, 2), (0, 3), (1, 3)])
        m = adjacency_matrix(g, [0, 1, 2, 3])
        res = greedy_coarsen(NeatDivision.finest(m), CoarsenParams(), quota=2)
        assert res.fusions == 0 and len(res.pairs) == 2

    def test_p32_yields_two_disjoint_identical_pairs(self):
        m = adjacency_matrix(Trigraph.path(32), list(range(32)))
        res = greedy_coarsen(
            NeatDivision.finest(m), CoarsenParams(mv_cap=4, ps_cap=8), quota=2
        )
        assert len(res.pairs) >= 2
        used = [c for pair in res.pairs for c in pair]
        assert len(used) == len(set(used))
        for a, b in res.pairs:
            assert res.division.matrix.column(a) == res.division.matrix.column(b)

    def test_distinct_column_bound_on_large_parts(self):
        m = adjacency_matrix(Trigraph.path(40), list(range(40)))
        p = CoarsenParams()
        res = greedy_coarsen(NeatDivision.finest(m), p, quota=3)
        div = res.division.division
        for q in range(div.n_col_parts):
            c0, c1 = div.col_part(q)
            if c1 - c0 > p.large_threshold:
                mv = mixed_value(res.division, COL, q)
                assert distinct_columns(res.division, q) <= 2 ** (mv + 1)


class TestDeleteDuplicate:
    def test_constant_matrix(self):
        m = TriMatrix([[0] * 4] * 4, symmetric=True)
        nd = NeatDivision(m, Division((2, 4), (2, 4)))
        out = delete_duplicate(nd, 1, 1)
        assert out.matrix.n_rows == 3
        assert out.division.col_ends == (1, 3)

    def test_rejects_unique_column(self):
        m = adjacency_matrix(Trigraph.path(3), [0, 1, 2])
        nd = NeatDivision.finest(m)
        with pytest.raises(NeatnessError):
            delete_duplicate(nd, 0, 0)

    def test_mixed_value_never_increases_across_deletion(self):
        rng = random.Random(6)
        done = 0
        while done < 100:
            n = rng.randint(4, 10)
            g = random_cograph(n, rng)
            m = adjacency_matrix(g, sorted(g.vertices))
            nd = NeatDivision.finest(m)
            # find a duplicate column pair if any
            cols = {}
            pair = None
            for j in range(n):
                key = m.column(j)
                if key in cols:
                    pair = (cols[key], j)
                    break
                cols[key] = j
            if pair is None:
                continue
            before = mixed_value(nd)
            out = delete_duplicate(nd, pair[1], pair[1])
            assert mixed_value(out) <= before
            rep = check_membership(out, CoarsenParams())
            assert rep.mv_ok and rep.ps_ok
            done += 1


class TestExtract:
    def test_p64_width_within_cap_product(self):
        p = CoarsenParams(mv_cap=4, ps_cap=8)
        g = Trigraph.path(64)
        m = adjacency_matrix(g, list(range(64)))
        res = extract_parallel_sequence(m, p)
        assert res.membership_ok and not res.stalled
        rep = verify_parallel(g, res.sequence)
        assert rep.valid
        assert rep.width == res.width <= p.mv_cap * p.ps_cap
        # logarithmic shape at the quota scale s = 4 * ps_cap
        assert len(res.sequence) <= 4 * p.ps_cap * math.log2(64)

    def test_cograph_any_order_width_zero(self):
        rng = random.Random(7)
        for _ in range(5):
            g = random_cograph(rng.randint(8, 26), rng)
            order = sorted(g.vertices)
            rng.shuffle(order)
            m = adjacency_matrix(g, order)
            res = extract_parallel_sequence(m, CoarsenParams(), vertex_ids=order)
            rep = verify_parallel(g, res.sequence)
            assert rep.valid and rep.width == 0

    def test_red_number_bounded_at_every_round(self):
        p = CoarsenParams()
        m = adjacency_matrix(Trigraph.path(64), list(range(64)))
        res = extract_parallel_sequence(m, p)
        for r in res.rounds:
            assert r.red_number <= p.mv_cap * p.ps_cap

    def test_width_matches_verifier(self):
        rng = random.Random(8)
        for n in (20, 40):
            g = random_cograph(n, rng)
            ids = sorted(g.vertices)
            m = adjacency_matrix(g, ids)
            res = extract_parallel_sequence(m, CoarsenParams(), vertex_ids=ids)
            rep = verify_parallel(g, res.sequence)
            assert rep.valid and rep.width == res.width

    def test_rejects_red_entries(self):
        m = TriMatrix([[0, 2], [2, 0]], symmetric=True)
        with pytest.raises(NeatnessError):
            extract_parallel_sequence(m, CoarsenParams())


def test_versatile_tree_depth_cap():
    m = adjacency_matrix(Trigraph.path(16), list(range(16)))
    tree = versatile_tree(m, CoarsenParams(), depth=2)
    assert tree["n"] == 16
    with pytest.raises(ValueError):
        versatile_tree(m, CoarsenParams(), depth=4)
