"""Neat divisions of 0/1/r matrices and invariant-preserving coarsening.

A division is neat when every zone is either filled with r entries (a mixed
zone) or r-free and horizontal or vertical.  Symmetric fusions merge two
consecutive parts in both dimensions and restore neatness by overwriting
every zone that gained an r entry or a 0,1-corner with all-r.  Repeating
admissible fusions under caps on mixed value and part size drives parts
toward duplicate columns, whose deletion models contraction; harvesting many
disjoint duplicate pairs per round yields parallel contraction sequences of
logarithmic length.

The theoretical caps (4*c_d and 2^(4*c_d+2) with c_d the Marcus-Tardos
constant) are astronomically large, so they are exposed by formula only and
all operations take practical caps as parameters.  Progress is then no
longer guaranteed: a round that finds neither a duplicate pair nor an
admissible fusion reports a stall instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from . import matrices as mx
from .matrices import Division, TriMatrix, MatrixError, R, ZERO
from .trigraph import (
    ParallelSequence,
    ParallelStep,
    Trigraph,
    apply_parallel,
    contract,
    max_red_degree,
)


class NeatnessError(MatrixError):
    pass


ROW = "row"
COL = "col"


class NeatDivision:
    """A TriMatrix with a neat division.

    Neatness is validated on construction.  Division symmetry (and matrix
    symmetry) are required by the fusion and membership operations but not
    by the type itself: the classification and mixed-value machinery is
    meaningful for any neat division.
    """

    __slots__ = ("matrix", "division", "_mixed")

    def __init__(self, matrix: TriMatrix, division: Division):
        if not division.covers(matrix):
            raise NeatnessError("division does not cover the matrix")
        self.matrix = matrix
        self.division = division
        mixed: set[tuple[int, int]] = set()
        for i, j in division.zones():
            r0, r1, c0, c1 = division.zone_bounds(i, j)
            entries = [matrix.rows[r][c] for r in range(r0, r1) for c in range(c0, c1)]
            if all(e == R for e in entries):
                mixed.add((i, j))
            elif any(e == R for e in entries):
                raise NeatnessError(f"zone ({i},{j}) mixes r with 0/1 entries")
            elif mx.classify_zone(matrix, (r0, r1), (c0, c1)) == mx.MIXED:
                raise NeatnessError(f"zone ({i},{j}) is r-free but mixed")
        self._mixed = frozenset(mixed)

    @classmethod
    def finest(cls, matrix: TriMatrix) -> "NeatDivision":
        return cls(matrix, Division.finest(matrix.n_rows, matrix.n_cols))

    @property
    def n(self) -> int:
        return self.matrix.n_rows

    def is_mixed_zone(self, i: int, j: int) -> bool:
        return (i, j) in self._mixed

    def mixed_zones(self) -> frozenset[tuple[int, int]]:
        return self._mixed

    def is_symmetric(self) -> bool:
        return self.matrix.symmetric and self.division.is_symmetric()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NeatDivision):
            return NotImplemented
        return self.matrix == other.matrix and self.division == other.division

    def __repr__(self) -> str:
        return (
            f"NeatDivision({self.matrix.n_rows}x{self.matrix.n_cols}, "
            f"{self.division.n_row_parts}x{self.division.n_col_parts} parts)"
        )


# -- mixed values --------------------------------------------------------------


def _corners01(m: TriMatrix) -> set[tuple[int, int]]:
    return set(mx.find_corners(m, zero_one=True))


def _row_part_mixed_value(nd: NeatDivision, p: int, corners: set[tuple[int, int]]) -> int:
    div = nd.division
    r0, r1 = div.row_part(p)
    value = sum(1 for j in range(div.n_col_parts) if nd.is_mixed_zone(p, j))
    for j in range(div.n_col_parts - 1):
        if nd.is_mixed_zone(p, j) or nd.is_mixed_zone(p, j + 1):
            continue  # a mixed cut cannot border a mixed zone
        e = div.col_ends[j]
        if any((i, e - 1) in corners for i in range(r0, r1 - 1)):
            value += 1
    return value


def _col_part_mixed_value(nd: NeatDivision, q: int, corners: set[tuple[int, int]]) -> int:
    div = nd.division
    c0, c1 = div.col_part(q)
    value = sum(1 for i in range(div.n_row_parts) if nd.is_mixed_zone(i, q))
    for i in range(div.n_row_parts - 1):
        if nd.is_mixed_zone(i, q) or nd.is_mixed_zone(i + 1, q):
            continue
        e = div.row_ends[i]
        if any((e - 1, j) in corners for j in range(c0, c1 - 1)):
            value += 1
    return value


def mixed_value(nd: NeatDivision, axis: Optional[str] = None, part: Optional[int] = None) -> int:
    """Mixed value of one part, or of the whole division (the maximum).

    The mixed value of a part counts its mixed zones plus its mixed cuts: a
    cut between two adjacent non-mixed zones whose two-line boundary strip
    contains a 0,1-corner; one unit per cut regardless of how many corners
    overlap it.
    """
    corners = _corners01(nd.matrix)
    if axis is None:
        row_vals = [
            _row_part_mixed_value(nd, p, corners)
            for p in range(nd.division.n_row_parts)
        ]
        col_vals = [
            _col_part_mixed_value(nd, q, corners)
            for q in range(nd.division.n_col_parts)
        ]
        return max(row_vals + col_vals)
    if part is None:
        raise ValueError("part index required with an axis")
    if axis == ROW:
        return _row_part_mixed_value(nd, part, corners)
    if axis == COL:
        return _col_part_mixed_value(nd, part, corners)
    raise ValueError(f"unknown axis {axis!r}")


def mixed_values(nd: NeatDivision, axis: str) -> list[int]:
    corners = _corners01(nd.matrix)
    if axis == ROW:
        return [_row_part_mixed_value(nd, p, corners) for p in range(nd.division.n_row_parts)]
    if axis == COL:
        return [_col_part_mixed_value(nd, q, corners) for q in range(nd.division.n_col_parts)]
    raise ValueError(f"unknown axis {axis!r}")


def average_mixed_value(nd: NeatDivision, axis: str) -> float:
    vals = mixed_values(nd, axis)
    return sum(vals) / len(vals)


def red_number(m: TriMatrix) -> int:
    """Maximum count of r entries in a single row or column."""
    by_row = max((row.count(R) for row in m.rows), default=0)
    by_col = max(
        (sum(1 for i in range(m.n_rows) if m.rows[i][j] == R) for j in range(m.n_cols)),
        default=0,
    )
    return max(by_row, by_col)


# -- coarsening operations ------------------------------------------------------


def coarsen_to(nd: NeatDivision, row_ends: tuple[int, ...], col_ends: tuple[int, ...]) -> NeatDivision:
    """Coarsen to the given division, filling with r every zone that holds an
    r entry or a 0,1-corner.  The result is neat by construction."""
    new_div = Division(row_ends, col_ends)
    if not new_div.coarsens(nd.division):
        raise NeatnessError("target division does not coarsen the current one")
    m = nd.matrix
    rows = [list(r) for r in m.rows]
    for i, j in new_div.zones():
        r0, r1, c0, c1 = new_div.zone_bounds(i, j)
        zone_has_r = any(
            m.rows[r][c] == R for r in range(r0, r1) for c in range(c0, c1)
        )
        fill = zone_has_r or any(
            mx._window_mixed(m, r, c, zero_one=True)
            for r in range(r0, r1 - 1)
            for c in range(c0, c1 - 1)
        )
        if fill:
            for r in range(r0, r1):
                for c in range(c0, c1):
                    rows[r][c] = R
    return NeatDivision(TriMatrix(rows, symmetric=m.symmetric), new_div)


def symmetric_fusion(nd: NeatDivision, col_part_index: int) -> NeatDivision:
    """Fuse column parts i, i+1 and the corresponding row parts."""
    div = nd.division
    if not div.is_symmetric():
        raise NeatnessError("symmetric fusion needs a symmetric division")
    i = col_part_index
    if not 0 <= i < div.n_col_parts - 1:
        raise NeatnessError(f"no consecutive column parts at index {i}")
    new_ends = tuple(e for k, e in enumerate(div.col_ends) if k != i)
    return coarsen_to(nd, new_ends, new_ends)


def delete_duplicate(nd: NeatDivision, col_index: int, row_index: int) -> NeatDivision:
    """Remove one column of a duplicated pair together with its symmetric row.

    Models a contraction: since the two columns agree everywhere, dropping
    one loses no information.  Neatness, part sizes and mixed values can
    only improve.
    """
    return _delete_many(nd, [(col_index, row_index)])


def _delete_many(nd: NeatDivision, picks: list[tuple[int, int]]) -> NeatDivision:
    m = nd.matrix
    if not m.symmetric:
        raise NeatnessError("duplicate deletion needs a symmetric matrix")
    cols = set()
    for col_index, row_index in picks:
        if row_index != col_index:
            raise NeatnessError("symmetric row of a column has the same index")
        column = m.column(col_index)
        if not any(
            m.column(j) == column for j in range(m.n_cols) if j != col_index and j not in cols
        ):
            raise NeatnessError(f"column {col_index} has no identical partner")
        cols.add(col_index)
    keep = [k for k in range(m.n_cols) if k not in cols]
    if not keep:
        raise NeatnessError("cannot delete every column")
    rows = tuple(tuple(m.rows[r][c] for c in keep) for r in keep)
    ends = []
    for e in nd.division.col_ends:
        surviving = sum(1 for k in keep if k < e)
        if surviving and (not ends or surviving > ends[-1]):
            ends.append(surviving)
    new_ends = tuple(ends)
    return NeatDivision(TriMatrix(rows, symmetric=True), Division(new_ends, new_ends))


# -- membership ------------------------------------------------------------------


@dataclass(frozen=True)
class CoarsenParams:
    """Practical stand-ins for the theoretical coarsening caps.

    d is the mixed-minor order that must stay absent; mv_cap and ps_cap cap
    the mixed value and the part size; parts larger than large_threshold are
    "large" and are never fused further.  theoretical(d) yields the caps the
    guarantees are proved at; they are far beyond any testable size.

    The default d = 3 admits path-like matrices, whose finest divisions
    carry 2-mixed minors but never 3-mixed ones.
    """

    d: int = 3
    mv_cap: int = 4
    ps_cap: int = 8
    large_threshold: int = 5

    def __post_init__(self):
        if self.mv_cap < 1:
            raise ValueError("mv_cap must be at least 1")
        if self.large_threshold > self.ps_cap:
            raise ValueError("large_threshold must not exceed ps_cap")

    @classmethod
    def theoretical(cls, d: int) -> "CoarsenParams":
        c_d = mx.marcus_tardos_bound(d)
        mv_cap = math.ceil(4 * c_d)
        ps_cap = 2 ** (mv_cap + 2)
        return cls(d=d, mv_cap=mv_cap, ps_cap=ps_cap, large_threshold=ps_cap // 2)


@dataclass(frozen=True)
class MembershipReport:
    mixed_value: int
    mv_ok: bool
    part_size: int
    ps_ok: bool
    mixed_free: bool
    symmetric: bool
    red_number: int
    red_bound: int
    red_ok: bool
    avg_mixed_value_rows: float
    avg_mixed_value_cols: float

    @property
    def passed(self) -> bool:
        return self.mv_ok and self.ps_ok and self.mixed_free and self.symmetric and self.red_ok


def find_t_mixed_neat(nd: NeatDivision, t: int) -> Optional[Division]:
    """Mixed-minor search for neat divisions: a (t,t)-division coarsening
    the neat one whose every zone contains an r entry (hence a whole mixed
    zone) or a 0,1-corner."""
    m = nd.matrix
    if t < 1:
        raise MatrixError("t must be positive")
    if t > min(nd.division.n_row_parts, nd.division.n_col_parts):
        return None
    corners = mx.find_corners(m, zero_one=True)
    r_points = [
        (i, j) for i, row in enumerate(m.rows) for j, e in enumerate(row) if e == R
    ]
    bound = len(corners) + len(nd.mixed_zones())
    if bound < t * t:
        return None
    corner_acc = mx.prefix_counts(corners, m.n_rows, m.n_cols)
    r_acc = mx.prefix_counts(r_points, m.n_rows, m.n_cols)

    def hit(r0: int, r1: int, c0: int, c1: int) -> bool:
        if mx._rect_count(r_acc, r0, r1, c0, c1) > 0:
            return True
        if r1 - r0 < 2 or c1 - c0 < 2:
            return False
        return mx._rect_count(corner_acc, r0, r1 - 1, c0, c1 - 1) > 0

    return mx._search_minor(
        m,
        t,
        hit,
        bound,
        allowed_row_ends=list(nd.division.row_ends),
        allowed_col_ends=list(nd.division.col_ends),
    )


def check_membership(nd: NeatDivision, p: CoarsenParams) -> MembershipReport:
    """Report on the three cap bullets plus the implied red-number bound."""
    mv = mixed_value(nd)
    ps = nd.division.part_size()
    free = find_t_mixed_neat(nd, p.d) is None
    rn = red_number(nd.matrix)
    bound = p.mv_cap * p.ps_cap
    return MembershipReport(
        mixed_value=mv,
        mv_ok=mv <= p.mv_cap,
        part_size=ps,
        ps_ok=ps <= p.ps_cap,
        mixed_free=free,
        symmetric=nd.is_symmetric(),
        red_number=rn,
        red_bound=bound,
        red_ok=rn <= bound,
        avg_mixed_value_rows=average_mixed_value(nd, ROW),
        avg_mixed_value_cols=average_mixed_value(nd, COL),
    )


# -- greedy coarsening ------------------------------------------------------------


@dataclass
class CoarsenResult:
    division: NeatDivision
    pairs: list[tuple[int, int]]
    fusions: int
    stalled: bool


def distinct_columns(nd: NeatDivision, part: int) -> int:
    c0, c1 = nd.division.col_part(part)
    return len({nd.matrix.column(j) for j in range(c0, c1)})


def _harvest_pairs(nd: NeatDivision, p: CoarsenParams) -> list[tuple[int, int]]:
    """Disjoint pairs of identical columns, same-part groups first, then
    leftmost cross-part matches; asserts the distinct-column bound on every
    large part."""
    m = nd.matrix
    div = nd.division
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for q in range(div.n_col_parts):
        c0, c1 = div.col_part(q)
        size = c1 - c0
        if size > p.large_threshold:
            mv = mixed_value(nd, COL, q)
            dc = distinct_columns(nd, q)
            if dc > 2 ** (mv + 1):
                raise AssertionError(
                    f"part {q}: {dc} distinct columns exceeds 2^(mv+1) = {2 ** (mv + 1)}"
                )
        groups: dict[tuple[int, ...], list[int]] = {}
        for j in range(c0, c1):
            groups.setdefault(m.column(j), []).append(j)
        for cols in groups.values():
            for a, b in zip(cols[::2], cols[1::2]):
                pairs.append((a, b))
                used.add(a)
                used.add(b)
    remaining: dict[tuple[int, ...], list[int]] = {}
    for j in range(m.n_cols):
        if j not in used:
            remaining.setdefault(m.column(j), []).append(j)
    for cols in remaining.values():
        for a, b in zip(cols[::2], cols[1::2]):
            pairs.append((a, b))
    return sorted(pairs)


def greedy_coarsen(
    nd: NeatDivision, p: CoarsenParams, quota: Optional[int] = None
) -> CoarsenResult:
    """Fuse consecutive small parts (leftmost admissible first) until enough
    disjoint identical-column pairs exist, then return them.

    A fusion is admissible when both parts are small, the merged part
    respects ps_cap and its mixed value (in both dimensions) respects
    mv_cap.  When no pair and no admissible fusion remains the round stalls:
    whatever pairs exist are returned with stalled=True.
    """
    if not nd.is_symmetric():
        raise NeatnessError("greedy coarsening needs symmetric matrix and division")
    n = nd.matrix.n_rows
    if quota is None:
        quota = max(1, n // (4 * p.ps_cap))
    cur = nd
    fusions = 0
    while True:
        pairs = _harvest_pairs(cur, p)
        if len(pairs) >= quota:
            return CoarsenResult(cur, pairs, fusions, False)
        fused = _try_fusion(cur, p)
        if fused is None:
            return CoarsenResult(cur, pairs, fusions, True)
        cur = fused
        fusions += 1


def _try_fusion(nd: NeatDivision, p: CoarsenParams) -> Optional[NeatDivision]:
    div = nd.division
    sizes = div.col_part_sizes()
    for i in range(div.n_col_parts - 1):
        if sizes[i] > p.large_threshold or sizes[i + 1] > p.large_threshold:
            continue  # never merge a large part with another part
        if sizes[i] + sizes[i + 1] > p.ps_cap:
            continue
        trial = symmetric_fusion(nd, i)
        if (
            mixed_value(trial, COL, i) <= p.mv_cap
            and mixed_value(trial, ROW, i) <= p.mv_cap
        ):
            return trial
    return None


# -- parallel sequence extraction ---------------------------------------------------


@dataclass
class RoundTrace:
    n: int
    pairs: int
    fusions: int
    mixed_value: int
    red_number: int
    stalled: bool


@dataclass
class ExtractResult:
    sequence: ParallelSequence
    widths: list[int]
    stalled: bool
    membership_ok: bool
    rounds: list[RoundTrace]

    @property
    def width(self) -> int:
        return max(self.widths, default=0)


def extract_parallel_sequence(
    m: TriMatrix,
    p: CoarsenParams,
    vertex_ids: Optional[list[int]] = None,
) -> ExtractResult:
    """Parallel contraction sequence from repeated coarsen-and-delete rounds.

    m must be the 0/1 symmetric adjacency matrix of a graph.  Each round
    contracts all harvested duplicate pairs as one parallel step; when the
    matrix is small enough (or a round stalls) the sequence is finished by
    single contractions that greedily minimize the red degree.  The returned
    sequence is always complete and valid; the width bound
    mv_cap * ps_cap is guaranteed only when the finest division passed
    membership (membership_ok) and no round stalled.
    """
    if not m.symmetric:
        raise NeatnessError("adjacency matrix must be symmetric")
    if any(e == R for row in m.rows for e in row):
        raise NeatnessError("input must be a 0/1 graph matrix")
    n = m.n_rows
    ids = list(vertex_ids) if vertex_ids is not None else list(range(n))
    if len(ids) != n or len(set(ids)) != n:
        raise NeatnessError("vertex_ids must be distinct and match the dimension")
    trig = _graph_of_matrix(m, ids)
    nd = NeatDivision.finest(m)
    membership_ok = check_membership(nd, p).passed
    tail_at = min(4 * p.ps_cap, p.mv_cap * p.ps_cap)
    steps: list[ParallelStep] = []
    widths: list[int] = []
    rounds: list[RoundTrace] = []
    stalled = False
    cur_ids = ids
    while nd.matrix.n_rows > tail_at:
        quota = max(1, nd.matrix.n_rows // (4 * p.ps_cap))
        res = greedy_coarsen(nd, p, quota)
        rounds.append(
            RoundTrace(
                n=res.division.matrix.n_rows,
                pairs=len(res.pairs),
                fusions=res.fusions,
                mixed_value=mixed_value(res.division),
                red_number=red_number(res.division.matrix),
                stalled=res.stalled and not res.pairs,
            )
        )
        if not res.pairs:
            stalled = True
            break
        nd = res.division
        pairs_v = [
            (min(cur_ids[a], cur_ids[b]), max(cur_ids[a], cur_ids[b]))
            for a, b in res.pairs
        ]
        step = ParallelStep.of(pairs_v)
        steps.append(step)
        trig = apply_parallel(trig, step)
        widths.append(max_red_degree(trig))
        drop = {b for _, b in res.pairs}
        keep = [k for k in range(nd.matrix.n_cols) if k not in drop]
        for a, b in res.pairs:
            cur_ids[a] = min(cur_ids[a], cur_ids[b])
        nd = _delete_many(nd, sorted((b, b) for b in drop))
        cur_ids = [cur_ids[k] for k in keep]
        if membership_ok:
            after = check_membership(nd, p)
            if not after.red_ok or not after.mixed_free:
                raise AssertionError(f"membership lost after deletion round: {after}")
    for step in _greedy_tail(trig):
        steps.append(step)
        trig = apply_parallel(trig, step)
        widths.append(max_red_degree(trig))
    return ExtractResult(ParallelSequence(tuple(steps)), widths, stalled, membership_ok, rounds)


def _graph_of_matrix(m: TriMatrix, ids: list[int]) -> Trigraph:
    edges = [
        (ids[i], ids[j])
        for i in range(m.n_rows)
        for j in range(i + 1, m.n_cols)
        if m.rows[i][j] != ZERO
    ]
    return Trigraph(ids, edges)


def _greedy_tail(trig: Trigraph) -> list[ParallelStep]:
    """Single contractions minimizing the resulting max red degree."""
    steps = []
    cur = trig
    while cur.n > 1:
        verts = sorted(cur.vertices)
        best = None
        for i, u in enumerate(verts):
            for v in verts[i + 1:]:
                trial, _ = contract(cur, u, v)
                key = (max_red_degree(trial), u, v)
                if best is None or key < best[0]:
                    best = (key, trial, (u, v))
        _, cur, pair = best
        steps.append(ParallelStep.of([pair]))
    return steps


# -- bounded-depth versatile tree -------------------------------------------------


def versatile_tree(m: TriMatrix, p: CoarsenParams, depth: int = 2) -> dict:
    """Materialize the first levels of the tree of contractions: every node
    records the pairs its coarsening offers, with one child per pair.
    Inspection helper only; depth is capped at 3."""
    if depth > 3:
        raise ValueError("versatile tree export is depth-capped at 3")
    nd = NeatDivision.finest(m)
    return _tree_node(nd, p, depth)


def _tree_node(nd: NeatDivision, p: CoarsenParams, depth: int) -> dict:
    res = greedy_coarsen(nd, p)
    node = {
        "n": nd.matrix.n_rows,
        "pairs": list(res.pairs),
        "children": [],
    }
    if depth <= 0 or nd.matrix.n_rows <= 2:
        return node
    for a, b in res.pairs:
        child = _delete_many(res.division, [(b, b)])
        node["children"].append(_tree_node(child, p, depth - 1))
    return node
