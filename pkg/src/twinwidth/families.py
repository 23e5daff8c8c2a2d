"""Generators and witness builders for the explicit graph families.

Covers half-graph sandwiches, rook graphs, 2-lifts and iterated lifts of
K4, subdivided cliques with their layered ordering, parallel merge
permutations and merge-sort decompositions, strong products with replayed
contraction sequences, trigraphs over hosts, biclique detection, and
queue/stack layout checks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import matrices as mx
from .matrices import Division, TriMatrix
from .trigraph import (
    ContractionSequence,
    ContractionStep,
    ParallelSequence,
    ParallelStep,
    Trigraph,
    TrigraphError,
    contract,
    verify_sequence,
)


class FamilyError(ValueError):
    pass


# -- permutations ---------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}; images[i] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise FamilyError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def one_line(cls, digits: str | Sequence[int]) -> "Permutation":
        """From 1-based one-line notation, e.g. "23514687" or [2,3,5,...]."""
        if isinstance(digits, str):
            values = [int(ch) for ch in digits]
        else:
            values = list(digits)
        return cls(tuple(v - 1 for v in values))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if self.n != other.n:
            raise FamilyError("size mismatch in composition")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def matrix(self) -> TriMatrix:
        """Sparse 0/1 matrix with a 1 at (i, images[i])."""
        n = self.n
        return TriMatrix(
            [[1 if self.images[i] == j else 0 for j in range(n)] for i in range(n)]
        )


def compose_all(perms: Sequence[Permutation], n: int) -> Permutation:
    """Left-to-right functional composition: the last factor applies first."""
    result = Permutation.identity(n)
    for p in perms:
        result = result.compose(p)
    return result


def _fixed_blocks(p: Permutation) -> list[tuple[int, int]]:
    """Minimal intervals fixed setwise by p, as half-open (start, end)."""
    blocks = []
    start = 0
    lo = hi = None
    for i in range(p.n):
        v = p.images[i]
        lo = v if lo is None else min(lo, v)
        hi = v if hi is None else max(hi, v)
        if lo == start and hi == i:
            blocks.append((start, i + 1))
            start = i + 1
            lo = hi = None
    return blocks


def is_parallel_t_merge(p: Permutation, t: int) -> bool:
    """True iff p acts independently on intervals, each splittable into at
    most t increasing runs (cut at descents)."""
    if t < 1:
        return False
    for start, end in _fixed_blocks(p):
        descents = sum(
            1 for i in range(start, end - 1) if p.images[i] > p.images[i + 1]
        )
        if descents + 1 > t:
            return False
    return True


def merge_decompose(p: Permutation, t: int) -> list[Permutation]:
    """Factor p into parallel t-merges, merge-sort style.

    Returns factors whose left-to-right composition equals p; at most
    ceil(log_t n) factors, each passing is_parallel_t_merge.  The first
    factor merges t balanced index blocks; the residue fixes each block and
    recurses inside them.
    """
    if t < 2:
        raise FamilyError("merge decomposition needs t >= 2")
    n = p.n
    factors: list[Permutation] = []
    residue = p
    blocks = [(0, n)]
    while not residue.is_identity():
        # split each block into t balanced sub-intervals; rho rearranges
        # every sub-interval so that residue becomes increasing on it, and
        # the factor is residue o rho^{-1}, a t-merge on each block
        new_blocks: list[tuple[int, int]] = []
        rho_inv = list(range(n))
        for start, end in blocks:
            for s, e in _balanced_split(start, end, t):
                if e - s <= 0:
                    continue
                new_blocks.append((s, e))
                xs = sorted(range(s, e), key=lambda i: residue.images[i])
                for pos, x in zip(range(s, e), xs):
                    rho_inv[pos] = x
        rho_inv_perm = Permutation(tuple(rho_inv))
        factor = residue.compose(rho_inv_perm)
        if not factor.is_identity():
            factors.append(factor)
        residue = rho_inv_perm.inverse()
        blocks = [b for b in new_blocks if b[1] - b[0] > 1]
        if not blocks:
            break
    if not residue.is_identity():
        raise AssertionError("merge decomposition did not terminate at identity")
    return factors


def _balanced_split(start: int, end: int, t: int) -> list[tuple[int, int]]:
    size = end - start
    base, extra = divmod(size, t)
    out = []
    pos = start
    for k in range(t):
        step = base + (1 if k < extra else 0)
        out.append((pos, pos + step))
        pos += step
    return out


# -- half-graph sandwiches and rook graphs ----------------------------------------


def gen_halfgraph_sandwich(n: int, sigma: Permutation, cliques: bool) -> Trigraph:
    """Three groups A, B, C of n vertices; half-graph between A and B on the
    identity order, half-graph between B and C reindexed by sigma; A and C
    never adjacent.  The groups are cliques or independent sets per flag.

    Vertices: a_i = i, b_i = n + i, c_i = 2n + i (0-based i).  Edges
    a_i b_j iff i < j, and b_m c_j iff sigma(m) < j.
    """
    if sigma.n != n:
        raise FamilyError("permutation size must match n")
    edges = []
    a = lambda i: i
    b = lambda i: n + i
    c = lambda i: 2 * n + i
    if cliques:
        for grp in (a, b, c):
            edges.extend((grp(i), grp(j)) for i in range(n) for j in range(i + 1, n))
    edges.extend((a(i), b(j)) for i in range(n) for j in range(n) if i < j)
    edges.extend((b(m), c(j)) for m in range(n) for j in range(n) if sigma(m) < j)
    return Trigraph(range(3 * n), edges)


def gen_rook(i: int) -> Trigraph:
    """i x i rook graph: vertices [i] x [i], edges within rows and columns."""
    if i < 1:
        raise FamilyError("rook graph needs i >= 1")
    vid = lambda r, c: r * i + c
    edges = []
    for r in range(i):
        for c1 in range(i):
            for c2 in range(c1 + 1, i):
                edges.append((vid(r, c1), vid(r, c2)))
    for c in range(i):
        for r1 in range(i):
            for r2 in range(r1 + 1, i):
                edges.append((vid(r1, c), vid(r2, c)))
    return Trigraph(range(i * i), edges)


def min_symmetric_difference(g: Trigraph) -> int:
    """min over vertex pairs of |N(u) symdiff N(v)| (neighborhoods opened)."""
    verts = sorted(g.vertices)
    best = None
    for idx, u in enumerate(verts):
        for v in verts[idx + 1:]:
            nu = g.neighbors(u) - {v}
            nv = g.neighbors(v) - {u}
            d = len(nu ^ nv)
            best = d if best is None else min(best, d)
    if best is None:
        raise FamilyError("need at least two vertices")
    return best


# -- 2-lifts ---------------------------------------------------------------------


@dataclass(frozen=True)
class Signing:
    """parallel/crossing choice for every edge of a base graph."""

    flags: dict[tuple[int, int], bool]  # True = crossing

    @classmethod
    def random(cls, g: Trigraph, rng: random.Random) -> "Signing":
        return cls({e: rng.random() < 0.5 for e in sorted(g.black_edges)})

    @classmethod
    def constant(cls, g: Trigraph, crossing: bool) -> "Signing":
        return cls({e: crossing for e in g.black_edges})


def two_lift(g: Trigraph, signing: Signing) -> Trigraph:
    """Duplicate every vertex v into 2v and 2v+1; each edge vw becomes two
    parallel or two crossing edges per its signing flag."""
    if g.red_edges:
        raise FamilyError("2-lift is defined for graphs, not trigraphs")
    missing = set(g.black_edges) - set(signing.flags)
    if missing:
        raise FamilyError(f"signing misses edges: {sorted(missing)}")
    edges = []
    for (u, v) in g.black_edges:
        if signing.flags[(u, v)]:
            edges.append((2 * u, 2 * v + 1))
            edges.append((2 * u + 1, 2 * v))
        else:
            edges.append((2 * u, 2 * v))
            edges.append((2 * u + 1, 2 * v + 1))
    verts = [x for v in g.vertices for x in (2 * v, 2 * v + 1)]
    return Trigraph(verts, edges)


def iterated_lift(levels: int, seed: int) -> tuple[list[Trigraph], ParallelSequence]:
    """Chain of random 2-lifts from K4 plus the copy-collapsing witness.

    The witness contracts, per level, all duplicate pairs of the last lift
    in one parallel step, then finishes the remaining K4 in lexicographic
    order.  Starting from the all-red final graph, every stage keeps red
    degree at most 6.
    """
    if levels < 0:
        raise FamilyError("levels must be non-negative")
    rng = random.Random(seed)
    chain = [Trigraph.complete(4)]
    for _ in range(levels):
        g = chain[-1]
        chain.append(two_lift(g, Signing.random(g, rng)))
    steps = []
    for level in range(levels, 0, -1):
        # descendants of vertex x of chain[level] occupy the id block
        # [x * 2^(levels-level), ...) in the final graph; after the deeper
        # steps its survivor is the block minimum, so the copies 2v, 2v+1 of
        # each v in chain[level-1] survive as the pair below
        shift = levels - level
        pairs = [
            (v << (shift + 1), (v << (shift + 1)) + (1 << shift))
            for v in sorted(chain[level - 1].vertices)
        ]
        steps.append(ParallelStep.of(pairs))
    final_ids = sorted(v * (1 << levels) for v in range(4))
    a, b, c, d = final_ids
    steps.append(ParallelStep.of([(a, b)]))
    steps.append(ParallelStep.of([(a, c)]))
    steps.append(ParallelStep.of([(a, d)]))
    return chain, ParallelSequence(tuple(steps))


# -- subdivisions -----------------------------------------------------------------


def subdivide(g: Trigraph, k: int) -> Trigraph:
    """Replace every edge by a path with k internal vertices."""
    if k < 0:
        raise FamilyError("k must be non-negative")
    if g.red_edges:
        raise FamilyError("subdivision is defined for graphs")
    if k == 0:
        return g
    edges = []
    verts = list(g.vertices)
    nxt = max(g.vertices, default=-1) + 1
    for (u, v) in sorted(g.black_edges):
        chain = [u] + list(range(nxt, nxt + k)) + [v]
        nxt += k
        verts.extend(chain[1:-1])
        edges.extend(zip(chain, chain[1:]))
    return Trigraph(verts, edges)


@dataclass
class SubdivisionOrder:
    """Layered ordering of a subdivided clique whose adjacency matrix is
    grid-sparse: consecutive layers meet in parallel-merge permutation
    zones."""

    graph: Trigraph
    order: list[int]
    layers: list[list[int]]
    k: int
    t: int
    sigma: Permutation
    factors: list[Permutation]


def subdivision_order(n: int, c: float) -> SubdivisionOrder:
    """K_n subdivided k = ceil(log2(n)/c) times, with the layered order.

    Edges of K_n are oriented from lower to higher endpoint.  V_0 keeps the
    natural order; V_1 and V_k are ordered by blocks of their endpoint in
    V_0 (ties by the other endpoint); the middle layers realize a merge
    decomposition of the path bijection sigma between V_1 and V_k.  The
    merge order t is ceil(2^(2c)), raised when k-1 factors cannot sort
    N = n(n-1)/2 elements at that t.
    """
    if n < 2:
        raise FamilyError("need n >= 2")
    if c <= 0:
        raise FamilyError("need c > 0")
    k = math.ceil(math.log2(n) / c)
    if k < 1:
        raise FamilyError("n too small for this c")
    base_edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    nedges = len(base_edges)
    g = subdivide(Trigraph.complete(n), k)
    # internal vertices of edge e (index m) are n + m*k .. n + m*k + k - 1,
    # forming the directed path from the lower endpoint (subdivide() walks
    # sorted edges and allocates sequentially)
    path_of = [list(range(n + m * k, n + (m + 1) * k)) for m in range(nedges)]
    t = max(2, math.ceil(2 ** (2 * c)))
    if k >= 2:
        while t ** (k - 1) < nedges:
            t += 1
    # V_1 order: blocks by tail endpoint, then head; V_k: blocks by head,
    # then tail
    order_v1 = sorted(range(nedges), key=lambda m: (base_edges[m][0], base_edges[m][1]))
    order_vk = sorted(range(nedges), key=lambda m: (base_edges[m][1], base_edges[m][0]))
    pos_vk = {m: i for i, m in enumerate(order_vk)}
    sigma = Permutation(tuple(pos_vk[order_v1[i]] for i in range(nedges)))
    layers: list[list[int]] = [list(range(n))]
    if k == 1:
        layers.append([path_of[m][0] for m in order_v1])
        factors: list[Permutation] = []
    else:
        factors = merge_decompose(sigma, t)
        factors = factors + [Permutation.identity(nedges)] * (k - 1 - len(factors))
        if len(factors) != k - 1:
            raise AssertionError("decomposition longer than the layer count")
        # pi maps position -> path for the current layer; the zone between
        # layers j, j+1 is then the permutation matrix of rho_j, and
        # sigma = rho_{k-1} o ... o rho_1 forces rho_j = factors[k-1-j]
        pi = list(order_v1)
        layers.append([path_of[m][0] for m in pi])
        for j in range(1, k):
            rho_inv = factors[k - 1 - j].inverse()
            pi = [pi[rho_inv.images[i]] for i in range(nedges)]
            layers.append([path_of[m][j] for m in pi])
    order = [v for layer in layers for v in layer]
    return SubdivisionOrder(
        graph=g, order=order, layers=layers, k=k, t=t, sigma=sigma, factors=factors
    )


def layer_division(so: SubdivisionOrder) -> Division:
    ends = []
    acc = 0
    for layer in so.layers:
        acc += len(layer)
        ends.append(acc)
    return Division(tuple(ends), tuple(ends))


# -- strong products ---------------------------------------------------------------


def strong_product(g: Trigraph, h: Trigraph) -> Trigraph:
    """Vertices V(G) x V(H) as g_id * C + h_id with C = max(V(H)) + 1;
    (u,a)(v,b) adjacent iff both coordinates are equal or adjacent."""
    if g.red_edges or h.red_edges:
        raise FamilyError("strong product is defined for graphs")
    C = max(h.vertices) + 1
    vid = lambda u, a: u * C + a
    verts = [vid(u, a) for u in g.vertices for a in h.vertices]
    edges = []
    gv = sorted(g.vertices)
    hv = sorted(h.vertices)
    for i, u in enumerate(gv):
        for v in gv[i:]:
            for a in hv:
                for b in hv:
                    if u == v and a >= b:
                        continue
                    g_ok = u == v or g.relation(u, v) != 0
                    h_ok = a == b or h.relation(a, b) != 0
                    if g_ok and h_ok:
                        edges.append((vid(u, a), vid(v, b)))
    return Trigraph(verts, edges)


def product_sequence(
    g: Trigraph, seq_g: ContractionSequence, h: Trigraph, seq_h: ContractionSequence
) -> ContractionSequence:
    """Contraction sequence for the strong product: replay each step of
    seq_g simultaneously in every copy of G, then finish along seq_h."""
    for graph, seq in ((g, seq_g), (h, seq_h)):
        rep = verify_sequence(graph, seq)
        if not rep.valid:
            raise FamilyError(f"invalid input sequence: {rep.error}")
    C = max(h.vertices) + 1
    steps = []
    for step in seq_g.steps:
        for a in sorted(h.vertices):
            steps.append(ContractionStep.of(step.u * C + a, step.v * C + a))
    wg = min(v for v in g.vertices)
    # after replaying seq_g the survivor of G is its minimum id
    for step in seq_h.steps:
        steps.append(ContractionStep.of(wg * C + step.u, wg * C + step.v))
    return ContractionSequence(tuple(steps))


def product_width_bound(d_g: int, d_h: int, delta_h: int) -> int:
    return max(d_g * (delta_h + 1) + 2 * delta_h, d_h + delta_h)


def host_replay(t: Trigraph, host: Trigraph, seq_host: ContractionSequence) -> ContractionSequence:
    """Replay a sequence of the host graph on a trigraph over it.

    t must have the host's vertex set and total edge set (some edges turned
    red).  The same steps stay applicable and the width is bounded by the
    host sequence width plus the host maximum degree.
    """
    if t.vertices != host.vertices:
        raise FamilyError("trigraph is not over the host: vertex sets differ")
    if (t.black_edges | t.red_edges) != (host.black_edges | host.red_edges):
        raise FamilyError("trigraph is not over the host: edge sets differ")
    rep = verify_sequence(host, seq_host)
    if not rep.valid:
        raise FamilyError(f"invalid host sequence: {rep.error}")
    return ContractionSequence(seq_host.steps)


# -- bicliques ----------------------------------------------------------------------


def has_biclique(g: Trigraph, t: int, cap: int = 14) -> bool:
    """K_{t,t} as a subgraph (black edges), by exhaustive search over
    t-subsets and their common neighborhoods."""
    import itertools

    if g.n > cap:
        raise FamilyError(f"{g.n} vertices exceeds biclique search cap {cap}")
    if t < 1:
        return True
    verts = sorted(g.vertices)
    for left in itertools.combinations(verts, t):
        common = None
        for v in left:
            nb = g.black_neighbors(v)
            common = nb if common is None else common & nb
            if len(common) < t:
                break
        else:
            if len(common - set(left)) >= t:
                return True
    return False


# -- queue and stack layouts ----------------------------------------------------------


@dataclass(frozen=True)
class Layout:
    """Vertex order plus an edge partition into queues or stacks."""

    order: tuple[int, ...]
    parts: tuple[frozenset[tuple[int, int]], ...]
    kind: str  # "queue" | "stack"

    def __post_init__(self):
        if self.kind not in ("queue", "stack"):
            raise FamilyError(f"unknown layout kind {self.kind!r}")


def layout_check(g: Trigraph, layout: Layout) -> bool:
    """No independent pair in one part is nested (queue) / overlaps (stack)."""
    if sorted(layout.order) != sorted(g.vertices):
        raise FamilyError("layout order is not a permutation of the vertices")
    all_edges = set()
    for part in layout.parts:
        for e in part:
            all_edges.add(tuple(sorted(e)))
    if all_edges != set(g.black_edges):
        raise FamilyError("layout parts do not partition the edge set")
    total = sum(len(p) for p in layout.parts)
    if total != len(g.black_edges):
        raise FamilyError("layout parts overlap")
    pos = {v: i for i, v in enumerate(layout.order)}
    for part in layout.parts:
        edges = [tuple(sorted((pos[u], pos[v]))) for u, v in part]
        for i, (a, b) in enumerate(edges):
            for (x, y) in edges[i + 1:]:
                if len({a, b, x, y}) < 4:
                    continue
                nested = (a < x and y < b) or (x < a and b < y)
                overlaps = (a < x < b < y) or (x < a < y < b)
                if layout.kind == "queue" and nested:
                    return False
                if layout.kind == "stack" and overlaps:
                    return False
    return True


def layout_grid_bound(g: Trigraph, layout: Layout, cap: int = 64) -> Optional[Division]:
    """Witness against the layout bound: a 2(t+1)-grid minor of the
    adjacency matrix in layout order, expected None for valid layouts."""
    t = len(layout.parts)
    m = mx.adjacency_matrix(g, list(layout.order))
    return mx.find_t_grid(m, 2 * (t + 1), cap=cap)


def random_layout_graph(
    n: int, t: int, kind: str, seed: int, attempts: int = 600
) -> tuple[Trigraph, Layout]:
    """Random graph with a valid t-queue or t-stack layout by construction:
    candidate edges are accepted into the first part that tolerates them."""
    rng = random.Random(seed)
    order = list(range(n))
    parts: list[set[tuple[int, int]]] = [set() for _ in range(t)]
    present: set[tuple[int, int]] = set()
    for _ in range(attempts):
        u, v = rng.sample(range(n), 2)
        e = (min(u, v), max(u, v))
        if e in present:
            continue
        for part in parts:
            ok = True
            for (x, y) in part:
                if len({e[0], e[1], x, y}) < 4:
                    continue
                nested = (e[0] < x and y < e[1]) or (x < e[0] and e[1] < y)
                overlaps = (e[0] < x < e[1] < y) or (x < e[0] < y < e[1])
                if (kind == "queue" and nested) or (kind == "stack" and overlaps):
                    ok = False
                    break
            if ok:
                part.add(e)
                present.add(e)
                break
    g = Trigraph(range(n), present)
    layout = Layout(tuple(order), tuple(frozenset(p) for p in parts), kind)
    return g, layout
