"""Exact twin-width by exhaustive search on small graphs.

The search works on the symmetric relation matrix of the trigraph (entries
0/1/2 for none/black/red, diagonal ignored), contracting pairs of indices
depth-first with memoization on an isomorphism-invariant canonical key and
pruning as soon as a red count exceeds the target d.  A labeled-graph census
built on top of the oracle feeds the golden count files.
"""

from __future__ import annotations

import itertools
from typing import Optional

from .trigraph import (
    BLACK,
    NONE,
    RED,
    ContractionSequence,
    ContractionStep,
    Trigraph,
)

DEFAULT_CAP = 10

# Exact canonicalization enumerates orderings within color-refinement
# classes; beyond this many candidate orderings the raw labeled matrix is
# used as memo key instead (still sound, only fewer cache hits).
_CANON_PERM_LIMIT = 50_000

Matrix = tuple[tuple[int, ...], ...]


class CapExceededError(ValueError):
    """Instance larger than the configured exhaustive-search cap."""


def _matrix_of(g: Trigraph) -> tuple[Matrix, list[int]]:
    ids = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    rows = [[0] * n for _ in range(n)]
    for u, v in g.black_edges:
        rows[pos[u]][pos[v]] = BLACK
        rows[pos[v]][pos[u]] = BLACK
    for u, v in g.red_edges:
        rows[pos[u]][pos[v]] = RED
        rows[pos[v]][pos[u]] = RED
    return tuple(tuple(r) for r in rows), ids


def _contract_matrix(mat: Matrix, i: int, j: int) -> Matrix:
    """Merge index j into index i (i < j) with trigraph contraction rules."""
    n = len(mat)
    keep = [k for k in range(n) if k != j]
    merged = []
    for k in keep:
        if k == i:
            merged.append(0)
            continue
        a, b = mat[i][k], mat[j][k]
        if a == BLACK and b == BLACK:
            merged.append(BLACK)
        elif a == NONE and b == NONE:
            merged.append(NONE)
        else:
            merged.append(RED)
    out = []
    for r, k in enumerate(keep):
        if k == i:
            out.append(tuple(merged))
        else:
            row = [merged[r] if kk == i else mat[k][kk] for kk in keep]
            row[r] = 0
            out.append(tuple(row))
    return tuple(out)


def _red_ok(mat: Matrix, d: int) -> bool:
    return all(row.count(RED) <= d for row in mat)


def _refine_classes(mat: Matrix) -> list[list[int]]:
    """Color refinement; returns classes in a canonical (structural) order."""
    n = len(mat)
    ranks = [0] * n
    nclasses = 1
    while True:
        sigs = [
            (ranks[v], tuple(sorted((ranks[u], mat[v][u]) for u in range(n) if u != v)))
            for v in range(n)
        ]
        order = sorted(set(sigs))
        new_ranks = [order.index(s) for s in sigs]
        if len(order) == nclasses:
            break
        ranks, nclasses = new_ranks, len(order)
    classes: dict[int, list[int]] = {}
    for v, r in enumerate(ranks):
        classes.setdefault(r, []).append(v)
    return [classes[r] for r in sorted(classes)]


def _canonical_key(mat: Matrix):
    """Isomorphism-invariant key: minimal relabeled matrix over orderings
    compatible with the refinement classes, or the raw matrix when that
    enumeration would be too large."""
    n = len(mat)
    if n <= 1:
        return mat
    classes = _refine_classes(mat)
    count = 1
    for c in classes:
        for k in range(2, len(c) + 1):
            count *= k
            if count > _CANON_PERM_LIMIT:
                return ("raw", mat)
    best: Optional[Matrix] = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [v for part in parts for v in part]
        relabeled = tuple(tuple(mat[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        if best is None or relabeled < best:
            best = relabeled
    return best


def _decide(mat: Matrix, d: int, memo: dict) -> bool:
    n = len(mat)
    if n <= 1:
        return True
    key = _canonical_key(mat)
    cached = memo.get(key)
    if cached is not None:
        return cached
    result = False
    for i in range(n):
        for j in range(i + 1, n):
            child = _contract_matrix(mat, i, j)
            if _red_ok(child, d) and _decide(child, d, memo):
                result = True
                break
        if result:
            break
    memo[key] = result
    return result


def tww_decide(g: Trigraph, d: int, cap: int = DEFAULT_CAP, memo: Optional[dict] = None) -> bool:
    """True iff g admits a d-sequence.  Exhaustive; |V| capped."""
    if g.n > cap:
        raise CapExceededError(f"{g.n} vertices exceeds search cap {cap}")
    if d < 0:
        return False
    mat, _ = _matrix_of(g)
    if not _red_ok(mat, d):
        return False
    if memo is None:
        memo = {}
    return _decide(mat, d, memo)


def tww_exact(g: Trigraph, cap: int = DEFAULT_CAP) -> int:
    """Smallest d such that g admits a d-sequence."""
    if g.n > cap:
        raise CapExceededError(f"{g.n} vertices exceeds search cap {cap}")
    for d in range(max(0, g.n - 1) + 1):
        if tww_decide(g, d, cap=cap):
            return d
    raise AssertionError("unreachable: every graph has an (n-1)-sequence")


def _witness(mat: Matrix, ids: list[int], d: int, dead: dict) -> Optional[list[tuple[int, int]]]:
    """DFS returning contraction pairs (vertex ids); memoizes dead ends only,
    so any True path found is materialized rather than cached away."""
    n = len(mat)
    if n <= 1:
        return []
    key = _canonical_key(mat)
    if key in dead:
        return None
    for i in range(n):
        for j in range(i + 1, n):
            child = _contract_matrix(mat, i, j)
            if not _red_ok(child, d):
                continue
            child_ids = [min(ids[i], ids[j]) if k == i else ids[k] for k in range(n) if k != j]
            rest = _witness(child, child_ids, d, dead)
            if rest is not None:
                return [(ids[i], ids[j])] + rest
    dead[key] = True
    return None


def tww_sequence(g: Trigraph, cap: int = DEFAULT_CAP) -> tuple[int, ContractionSequence]:
    """Exact twin-width together with a witnessing d-sequence."""
    if g.n > cap:
        raise CapExceededError(f"{g.n} vertices exceeds search cap {cap}")
    mat, ids = _matrix_of(g)
    for d in range(max(0, g.n - 1) + 1):
        if not _red_ok(mat, d):
            continue
        pairs = _witness(mat, ids, d, {})
        if pairs is not None:
            return d, ContractionSequence.from_pairs(pairs)
    raise AssertionError("unreachable")


def tww_decide_bfs(g: Trigraph, d: int, cap: int = 7) -> bool:
    """Independent breadth-first oracle used to cross-check the DFS search.

    Deduplicates on raw labeled matrices only; no canonicalization, no
    shared code with the depth-first path beyond the contraction rule.
    """
    if g.n > cap:
        raise CapExceededError(f"{g.n} vertices exceeds BFS cap {cap}")
    mat, _ = _matrix_of(g)
    if not _red_ok(mat, d):
        return False
    frontier = {mat}
    while frontier:
        if any(len(m) == 1 for m in frontier):
            return True
        nxt = set()
        for m in frontier:
            n = len(m)
            for i in range(n):
                for j in range(i + 1, n):
                    child = _contract_matrix(m, i, j)
                    if _red_ok(child, d):
                        nxt.add(child)
        frontier = nxt
    return False


def census(n: int, d: int) -> int:
    """Number of labeled graphs on [n] with twin-width at most d."""
    if not 1 <= n <= 6:
        raise ValueError("census supports 1 <= n <= 6")
    pairs = list(itertools.combinations(range(n), 2))
    memo: dict = {}
    count = 0
    for bits in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
        g = Trigraph.from_edges(n, edges)
        if tww_decide(g, d, cap=n, memo=memo):
            count += 1
    return count
