"""0/1/r matrices, divisions into consecutive parts, corners and minors.

Zones of a divided matrix are classified as constant, horizontal (all
columns equal), vertical (all rows equal) or mixed.  A t-grid minor is a
(t,t)-division with a nonzero entry in every zone; a t-mixed minor has every
zone mixed.  Exact existence search enumerates row divisions depth-first and
completes the columns greedily, which is optimal for a fixed row division
because both per-zone predicates are monotone under widening a zone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .trigraph import BLACK, RED, Trigraph

ZERO = 0
ONE = 1
R = 2

_SYMBOLS = {"0": ZERO, "1": ONE, "r": R}
_CHARS = {ZERO: "0", ONE: "1", R: "r"}

CONSTANT = "constant"
HORIZONTAL = "horizontal"
VERTICAL = "vertical"
MIXED = "mixed"

DEFAULT_SEARCH_CAP = 64


class MatrixError(ValueError):
    pass


class SearchCapError(MatrixError):
    """Exact minor search refused: matrix larger than the cap."""


class TriMatrix:
    """Immutable matrix over {0, 1, r}."""

    __slots__ = ("rows", "n_rows", "n_cols", "symmetric")

    def __init__(self, rows: Iterable[Iterable[int]], symmetric: bool = False):
        rs = tuple(tuple(row) for row in rows)
        if not rs or not rs[0]:
            raise MatrixError("matrix must be non-empty")
        width = len(rs[0])
        for row in rs:
            if len(row) != width:
                raise MatrixError("ragged rows")
            for e in row:
                if e not in (ZERO, ONE, R):
                    raise MatrixError(f"bad entry {e!r}")
        if symmetric:
            if len(rs) != width:
                raise MatrixError("symmetric matrix must be square")
            for i in range(len(rs)):
                for j in range(i + 1, width):
                    if rs[i][j] != rs[j][i]:
                        raise MatrixError(f"not symmetric at ({i},{j})")
        self.rows = rs
        self.n_rows = len(rs)
        self.n_cols = width
        self.symmetric = symmetric

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "TriMatrix":
        if not (0 <= r0 < r1 <= self.n_rows and 0 <= c0 < c1 <= self.n_cols):
            raise MatrixError("empty or out-of-range rectangle")
        return TriMatrix(tuple(row[c0:c1] for row in self.rows[r0:r1]))

    def transpose(self) -> "TriMatrix":
        return TriMatrix(zip(*self.rows), symmetric=self.symmetric)

    def count_nonzero(self) -> int:
        return sum(1 for row in self.rows for e in row if e != ZERO)

    @classmethod
    def parse(cls, text: str, symmetric: bool = False) -> "TriMatrix":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not lines:
            raise MatrixError("empty matrix text")
        try:
            n, m = map(int, lines[0].split())
        except ValueError as exc:
            raise MatrixError(f"bad header {lines[0]!r}") from exc
        if len(lines) != n + 1:
            raise MatrixError(f"expected {n} rows, got {len(lines) - 1}")
        rows = []
        for ln in lines[1:]:
            if len(ln) != m:
                raise MatrixError(f"row {ln!r} has wrong length")
            try:
                rows.append([_SYMBOLS[ch] for ch in ln])
            except KeyError as exc:
                raise MatrixError(f"bad symbol in row {ln!r}") from exc
        return cls(rows, symmetric=symmetric)

    def format(self) -> str:
        body = "\n".join("".join(_CHARS[e] for e in row) for row in self.rows)
        return f"{self.n_rows} {self.n_cols}\n{body}\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"TriMatrix({self.n_rows}x{self.n_cols})"


@dataclass(frozen=True)
class Division:
    """Consecutive row/column parts, stored as cumulative end indices.

    row_ends[-1] must equal the row count of the divided matrix, likewise
    col_ends; e.g. row_ends (2, 5, 8) divides 8 rows into [0,2), [2,5),
    [5,8).  A division is symmetric when both end tuples coincide.
    """

    row_ends: tuple[int, ...]
    col_ends: tuple[int, ...]

    def __post_init__(self):
        for ends in (self.row_ends, self.col_ends):
            if not ends or any(e <= 0 for e in ends):
                raise MatrixError("division parts must be non-empty")
            if any(a >= b for a, b in zip(ends, ends[1:])):
                raise MatrixError("cut positions must be strictly increasing")

    @classmethod
    def finest(cls, n_rows: int, n_cols: int) -> "Division":
        return cls(tuple(range(1, n_rows + 1)), tuple(range(1, n_cols + 1)))

    @classmethod
    def coarsest(cls, n_rows: int, n_cols: int) -> "Division":
        return cls((n_rows,), (n_cols,))

    @property
    def n_row_parts(self) -> int:
        return len(self.row_ends)

    @property
    def n_col_parts(self) -> int:
        return len(self.col_ends)

    def row_part(self, i: int) -> tuple[int, int]:
        return (self.row_ends[i - 1] if i else 0, self.row_ends[i])

    def col_part(self, j: int) -> tuple[int, int]:
        return (self.col_ends[j - 1] if j else 0, self.col_ends[j])

    def row_part_sizes(self) -> list[int]:
        return [b - a for a, b in (self.row_part(i) for i in range(self.n_row_parts))]

    def col_part_sizes(self) -> list[int]:
        return [b - a for a, b in (self.col_part(j) for j in range(self.n_col_parts))]

    def part_size(self) -> int:
        return max(self.row_part_sizes() + self.col_part_sizes())

    def is_symmetric(self) -> bool:
        return self.row_ends == self.col_ends

    def covers(self, m: TriMatrix) -> bool:
        return self.row_ends[-1] == m.n_rows and self.col_ends[-1] == m.n_cols

    def coarsens(self, other: "Division") -> bool:
        """True when every part of self is a union of parts of other."""
        return set(self.row_ends) <= set(other.row_ends) and set(self.col_ends) <= set(
            other.col_ends
        ) and self.row_ends[-1] == other.row_ends[-1] and self.col_ends[-1] == other.col_ends[-1]

    def zone_bounds(self, i: int, j: int) -> tuple[int, int, int, int]:
        r0, r1 = self.row_part(i)
        c0, c1 = self.col_part(j)
        return r0, r1, c0, c1

    def zones(self) -> Iterator[tuple[int, int]]:
        return itertools.product(range(self.n_row_parts), range(self.n_col_parts))


@dataclass(frozen=True)
class Zone:
    """Address of the submatrix at row-part i, column-part j."""

    row_part: int
    col_part: int


# -- zone classification and corners ------------------------------------------


def classify_zone(m: TriMatrix, rows: tuple[int, int], cols: tuple[int, int]) -> str:
    """Classify the rectangle rows x cols (half-open index ranges).

    horizontal: all columns equal, i.e. every row is a repeated entry;
    vertical: all rows equal; constant: both; mixed: neither.
    """
    r0, r1 = rows
    c0, c1 = cols
    if not (0 <= r0 < r1 <= m.n_rows and 0 <= c0 < c1 <= m.n_cols):
        raise MatrixError("empty or out-of-range zone")
    horizontal = all(
        m.rows[i][c0:c1].count(m.rows[i][c0]) == c1 - c0 for i in range(r0, r1)
    )
    first = m.rows[r0][c0:c1]
    vertical = all(m.rows[i][c0:c1] == first for i in range(r0 + 1, r1))
    if horizontal and vertical:
        return CONSTANT
    if horizontal:
        return HORIZONTAL
    if vertical:
        return VERTICAL
    return MIXED


def classify_division_zone(m: TriMatrix, div: Division, zone: Zone) -> str:
    return classify_zone(
        m,
        div.row_part(zone.row_part),
        (div.col_part(zone.col_part)),
    )


def _window_mixed(m: TriMatrix, i: int, j: int, zero_one: bool) -> bool:
    a, b = m.rows[i][j], m.rows[i][j + 1]
    c, d = m.rows[i + 1][j], m.rows[i + 1][j + 1]
    if zero_one and R in (a, b, c, d):
        return False
    return (a, b) != (c, d) and (a, c) != (b, d)


def find_corners(m: TriMatrix, zero_one: bool = False) -> list[tuple[int, int]]:
    """Top-left positions of all 2x2 contiguous mixed submatrices."""
    return [
        (i, j)
        for i in range(m.n_rows - 1)
        for j in range(m.n_cols - 1)
        if _window_mixed(m, i, j, zero_one)
    ]


def has_corner(m: TriMatrix, zero_one: bool = False) -> bool:
    return any(
        _window_mixed(m, i, j, zero_one)
        for i in range(m.n_rows - 1)
        for j in range(m.n_cols - 1)
    )


# -- explicit-division minors -------------------------------------------------


def _check_square_division(m: TriMatrix, div: Division, t: Optional[int] = None) -> None:
    if not div.covers(m):
        raise MatrixError("division does not cover the matrix")
    if div.n_row_parts != div.n_col_parts:
        raise MatrixError("grid/mixed minors need a square division")
    if t is not None and div.n_row_parts != t:
        raise MatrixError(f"expected a ({t},{t})-division")


def is_t_grid(m: TriMatrix, div: Division, t: Optional[int] = None) -> bool:
    """Every zone contains a nonzero entry (r counts as nonzero)."""
    _check_square_division(m, div, t)
    for i, j in div.zones():
        r0, r1, c0, c1 = div.zone_bounds(i, j)
        if not any(m.rows[r][c] != ZERO for r in range(r0, r1) for c in range(c0, c1)):
            return False
    return True


def is_t_mixed(m: TriMatrix, div: Division, t: Optional[int] = None) -> bool:
    """Every zone is mixed."""
    _check_square_division(m, div, t)
    return all(
        classify_zone(m, div.row_part(i), div.col_part(j)) == MIXED
        for i, j in div.zones()
    )


# -- exact minor search -------------------------------------------------------
#
# Shared engine for t-grid / t-mixed / neat-mixed searches.  A "hit" function
# reports whether a zone (row range x column range) satisfies the per-zone
# predicate; all three predicates are monotone under widening, which makes
# the greedy left-to-right column completion exact for a fixed row division.

HitFn = Callable[[int, int, int, int], bool]


def prefix_counts(points: Iterable[tuple[int, int]], n_rows: int, n_cols: int):
    """2D prefix sums of an indicator set, for O(1) rectangle queries."""
    acc = [[0] * (n_cols + 1) for _ in range(n_rows + 1)]
    for i, j in points:
        acc[i + 1][j + 1] += 1
    for i in range(n_rows):
        row, prev = acc[i + 1], acc[i]
        for j in range(n_cols):
            row[j + 1] += row[j] + prev[j + 1] - prev[j]
    return acc


def _rect_count(acc, r0: int, r1: int, c0: int, c1: int) -> int:
    return acc[r1][c1] - acc[r0][c1] - acc[r1][c0] + acc[r0][c0]


def _grid_hit(m: TriMatrix) -> HitFn:
    points = [
        (i, j) for i, row in enumerate(m.rows) for j, e in enumerate(row) if e != ZERO
    ]
    acc = prefix_counts(points, m.n_rows, m.n_cols)

    def hit(r0: int, r1: int, c0: int, c1: int) -> bool:
        return _rect_count(acc, r0, r1, c0, c1) > 0

    return hit


def _mixed_hit(m: TriMatrix) -> HitFn:
    # a zone is mixed iff it contains a 2x2 contiguous mixed window
    acc = prefix_counts(find_corners(m), m.n_rows, m.n_cols)

    def hit(r0: int, r1: int, c0: int, c1: int) -> bool:
        if r1 - r0 < 2 or c1 - c0 < 2:
            return False
        return _rect_count(acc, r0, r1 - 1, c0, c1 - 1) > 0

    return hit


def _greedy_col_count(
    hit: HitFn, parts: list[tuple[int, int]], n_cols: int, need: int,
    allowed_col_ends: Optional[list[int]] = None,
) -> int:
    """Max number of column parts such that every given row part hits every
    column part; cuts restricted to allowed end positions when given."""
    ends = allowed_col_ends if allowed_col_ends is not None else list(range(1, n_cols + 1))
    count = 0
    start = 0
    for e in ends:
        if all(hit(r0, r1, start, e) for r0, r1 in parts):
            count += 1
            start = e
            if count >= need:
                return count
    return count


def _greedy_col_ends(
    hit: HitFn, parts: list[tuple[int, int]], n_cols: int, t: int,
    allowed_col_ends: Optional[list[int]] = None,
) -> Optional[tuple[int, ...]]:
    """Concrete t column parts for the given row parts, or None."""
    ends = allowed_col_ends if allowed_col_ends is not None else list(range(1, n_cols + 1))
    cuts: list[int] = []
    start = 0
    for e in ends:
        if len(cuts) == t - 1:
            break
        if all(hit(r0, r1, start, e) for r0, r1 in parts):
            cuts.append(e)
            start = e
    if len(cuts) < t - 1:
        return None
    if not all(hit(r0, r1, start, n_cols) for r0, r1 in parts):
        return None
    return tuple(cuts) + (n_cols,)


def _search_minor(
    m: TriMatrix,
    t: int,
    hit: HitFn,
    witness_bound: int,
    allowed_row_ends: Optional[list[int]] = None,
    allowed_col_ends: Optional[list[int]] = None,
) -> Optional[Division]:
    """Exact search for a (t,t)-division whose zones all hit.

    witness_bound is an upper bound on the number of zones that can hit in
    total (e.g. count of nonzero entries for grids); if below t*t the search
    is refuted immediately.
    """
    if t < 1:
        raise MatrixError("t must be positive")
    if t > min(m.n_rows, m.n_cols):
        return None
    if witness_bound < t * t:
        return None
    row_ends = allowed_row_ends if allowed_row_ends is not None else list(range(1, m.n_rows + 1))
    if len(row_ends) < t or (allowed_col_ends is not None and len(allowed_col_ends) < t):
        return None

    def dfs(parts: list[tuple[int, int]], pos: int) -> Optional[tuple[int, ...]]:
        if len(parts) == t:
            if parts[-1][1] != m.n_rows:
                return None
            return _greedy_col_ends(hit, parts, m.n_cols, t, allowed_col_ends)
        start = parts[-1][1] if parts else 0
        remaining = t - len(parts)
        for k in range(pos, len(row_ends)):
            e = row_ends[k]
            if len(row_ends) - k < remaining:
                break
            cand = parts + [(start, e)]
            # prune: even with only these row parts fixed, the columns cannot
            # reach t parts (adding row parts only lowers this bound); a wider
            # part at this depth may still work, so keep scanning
            if _greedy_col_count(hit, cand, m.n_cols, t, allowed_col_ends) < t:
                continue
            got = dfs(cand, k + 1)
            if got is not None:
                return got
        return None

    # force last row part to end at n_rows by construction in dfs
    col_ends = dfs([], 0)
    if col_ends is None:
        return None
    # rebuild the row ends found by rerunning dfs with recording
    rows = _recover_rows(m, t, hit, row_ends, col_ends)
    return Division(rows, col_ends)


def _recover_rows(
    m: TriMatrix, t: int, hit: HitFn, row_ends: list[int], col_ends: tuple[int, ...]
) -> tuple[int, ...]:
    cols = [((col_ends[k - 1] if k else 0), col_ends[k]) for k in range(len(col_ends))]
    cuts: list[int] = []
    start = 0
    for e in row_ends:
        if len(cuts) == t - 1:
            break
        if all(hit(start, e, c0, c1) for c0, c1 in cols):
            cuts.append(e)
            start = e
    assert len(cuts) == t - 1 and all(hit(start, m.n_rows, c0, c1) for c0, c1 in cols)
    return tuple(cuts) + (m.n_rows,)


def find_t_grid(m: TriMatrix, t: int, cap: int = DEFAULT_SEARCH_CAP) -> Optional[Division]:
    """A witnessing (t,t)-division with all zones nonzero, or None.

    Counting refutations (fewer nonzeros than t*t zones) short-circuit before
    the cap check; the branch-and-bound search itself is capped.
    """
    nonzero = m.count_nonzero()
    if t >= 1 and (t > min(m.n_rows, m.n_cols) or nonzero < t * t):
        return None
    if max(m.n_rows, m.n_cols) > cap:
        raise SearchCapError(f"matrix exceeds search cap {cap}")
    return _search_minor(m, t, _grid_hit(m), nonzero)


def find_t_mixed(m: TriMatrix, t: int, cap: int = DEFAULT_SEARCH_CAP) -> Optional[Division]:
    """A witnessing (t,t)-division with all zones mixed, or None."""
    corners = len(find_corners(m))
    if t >= 1 and (t > min(m.n_rows, m.n_cols) or corners < t * t):
        return None
    if max(m.n_rows, m.n_cols) > cap:
        raise SearchCapError(f"matrix exceeds search cap {cap}")
    return _search_minor(m, t, _mixed_hit(m), corners)


def enumerate_divisions(n_rows: int, n_cols: int, t: int) -> Iterator[Division]:
    """All (t,t)-divisions; brute-force oracle for validating the search."""
    for rcuts in itertools.combinations(range(1, n_rows), t - 1):
        for ccuts in itertools.combinations(range(1, n_cols), t - 1):
            yield Division(rcuts + (n_rows,), ccuts + (n_cols,))


# -- adjacency matrices -------------------------------------------------------


def adjacency_matrix(g: Trigraph, order: list[int]) -> TriMatrix:
    """Symmetric 0/1/r matrix of a trigraph under a vertex order."""
    if sorted(order) != sorted(g.vertices):
        raise MatrixError("order is not a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    rows = [[ZERO] * n for _ in range(n)]
    for u, v in g.black_edges:
        rows[pos[u]][pos[v]] = ONE
        rows[pos[v]][pos[u]] = ONE
    for u, v in g.red_edges:
        rows[pos[u]][pos[v]] = R
        rows[pos[v]][pos[u]] = R
    return TriMatrix(rows, symmetric=True)


def twin_order(g: Trigraph, seq) -> list[int]:
    """Vertex order in which a contraction sequence acts on consecutive
    groups: the leaf order of the contraction tree."""
    groups: dict[int, list[int]] = {v: [v] for v in g.vertices}
    for step in seq.steps:
        a, b = min(step.u, step.v), max(step.u, step.v)
        groups[a] = groups[a] + groups[b]
        del groups[b]
    if len(groups) != 1:
        raise MatrixError("sequence does not contract to a single vertex")
    (order,) = groups.values()
    return order


def marcus_tardos_bound(t: int) -> Fraction:
    """The density constant c_t = 8/3 (t+1)^2 2^(4t).

    Far beyond desk scale even for t = 1; exposed for documentation of the
    theoretical coarsening caps.
    """
    return Fraction(8, 3) * (t + 1) ** 2 * 2 ** (4 * t)
