"""Shared generators and independent recount oracles for the test suite."""

from __future__ import annotations

import itertools
import random

from twinwidth.coarsen import NeatDivision
from twinwidth.matrices import Division, TriMatrix, R
from twinwidth.trigraph import ParallelSequence, Trigraph, greedy_parallel_sequence


def random_graph(n: int, p: float, rng: random.Random) -> Trigraph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Trigraph.from_edges(n, edges)


def random_trigraph(n: int, rng: random.Random, p_black=0.35, p_red=0.12) -> Trigraph:
    black, red = [], []
    for e in itertools.combinations(range(n), 2):
        r = rng.random()
        if r < p_black:
            black.append(e)
        elif r < p_black + p_red:
            red.append(e)
    return Trigraph(range(n), black, red)


def random_cograph(n: int, rng: random.Random) -> Trigraph:
    """Grown by repeatedly duplicating a vertex as a false or true twin."""
    g = Trigraph.empty(1)
    nxt = 1
    while g.n < n:
        v = rng.choice(sorted(g.vertices))
        black = set(g.black_edges)
        for x in g.black_neighbors(v):
            black.add((min(nxt, x), max(nxt, x)))
        if rng.random() < 0.5:
            black.add((v, nxt))
        g = Trigraph(set(g.vertices) | {nxt}, black)
        nxt += 1
    return g


def first_parallel_sequence(g: Trigraph, d_max: int | None = None) -> ParallelSequence:
    """Greedy parallel sequence at the smallest admitting red-degree bound."""
    top = g.n if d_max is None else d_max
    for d in range(0, top + 1):
        pseq = greedy_parallel_sequence(g, d)
        if pseq is not None:
            return pseq
    raise AssertionError("greedy failed even at d = n")


def random_matrix(nr: int, nc: int, rng: random.Random, ones=0.35, reds=0.0) -> TriMatrix:
    rows = []
    for _ in range(nr):
        row = []
        for _ in range(nc):
            x = rng.random()
            if x < reds:
                row.append(2)
            elif x < reds + ones:
                row.append(1)
            else:
                row.append(0)
        rows.append(row)
    return TriMatrix(rows)


def random_neat_division(rng: random.Random, max_n: int = 12) -> NeatDivision:
    """Random symmetric neat division built by coarsening a random symmetric
    0/1 matrix from its finest division with random fill-preserving fusions."""
    from twinwidth.coarsen import symmetric_fusion

    n = rng.randint(4, max_n)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = 1 if rng.random() < 0.4 else 0
            rows[i][j] = rows[j][i] = v
    nd = NeatDivision(TriMatrix(rows, symmetric=True), Division.finest(n, n))
    for _ in range(rng.randint(0, n - 2)):
        parts = nd.division.n_col_parts
        if parts < 2:
            break
        nd = symmetric_fusion(nd, rng.randrange(parts - 1))
    return nd


def recount_mixed_value(nd: NeatDivision, axis: str, part: int) -> int:
    """Independent mixed-value oracle: scans raw entries only.

    Counts all-r zones along the part plus boundaries between consecutive
    non-all-r zones whose two-line strip holds a mixed 2x2 window with
    entries in {0,1}.
    """
    m = nd.matrix
    div = nd.division

    def all_r(r0, r1, c0, c1):
        return all(m.rows[r][c] == R for r in range(r0, r1) for c in range(c0, c1))

    def strip_corner(rows_, cols_):
        (r0, r1), (c0, c1) = rows_, cols_
        for i in range(r0, r1 - 1):
            for j in range(c0, c1 - 1):
                quad = (m.rows[i][j], m.rows[i][j + 1], m.rows[i + 1][j], m.rows[i + 1][j + 1])
                if R in quad:
                    continue
                if (quad[0], quad[1]) != (quad[2], quad[3]) and (quad[0], quad[2]) != (
                    quad[1],
                    quad[3],
                ):
                    return True
        return False

    total = 0
    if axis == "row":
        r0, r1 = div.row_part(part)
        zones = [div.col_part(j) for j in range(div.n_col_parts)]
        flags = [all_r(r0, r1, c0, c1) for c0, c1 in zones]
        total += sum(flags)
        for j in range(len(zones) - 1):
            if flags[j] or flags[j + 1]:
                continue
            e = zones[j][1]
            if strip_corner((r0, r1), (e - 1, e + 1)):
                total += 1
    else:
        c0, c1 = div.col_part(part)
        zones = [div.row_part(i) for i in range(div.n_row_parts)]
        flags = [all_r(r0, r1, c0, c1) for r0, r1 in zones]
        total += sum(flags)
        for i in range(len(zones) - 1):
            if flags[i] or flags[i + 1]:
                continue
            e = zones[i][1]
            if strip_corner((e - 1, e + 1), (c0, c1)):
                total += 1
    return total


FIG2_ROWS = """\
110100rr
111111rr
01100101
00000011
rr001010
rr011010
1011rr01
1011rr01"""


def fig2_neat_division() -> NeatDivision:
    """The 8x8 neat division example: symmetric division with part ends
    (2,3,4,6,8) on a non-symmetric 0/1/r matrix."""
    rows = [
        [{"0": 0, "1": 1, "r": 2}[ch] for ch in line]
        for line in FIG2_ROWS.splitlines()
    ]
    ends = (2, 3, 4, 6, 8)
    return NeatDivision(TriMatrix(rows), Division(ends, ends))
