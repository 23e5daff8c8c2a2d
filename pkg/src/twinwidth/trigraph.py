"""Trigraphs and contraction sequences, sequential and parallel.

A trigraph is a graph whose edge set is split into black (regular) edges and
red (error) edges.  Contracting two vertices u, v merges them into a single
vertex w: common black neighbors stay black, every other neighbor of u or v
becomes a red neighbor of w.  A sequence of contractions ending in a single
vertex witnesses an upper bound on the twin-width of the starting graph,
namely the maximum red degree seen along the way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

# Pairwise relation codes.  These double as the 2-bit codes of the codec
# record format (00 none, 01 black, 10 red).
NONE = 0
BLACK = 1
RED = 2


class TrigraphError(ValueError):
    """Malformed trigraph or inapplicable operation."""


def _norm(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise TrigraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Trigraph:
    """Immutable vertex/black-edge/red-edge triple.

    Vertex ids are arbitrary non-negative integers.  The vertex created by
    contracting u and v keeps the id min(u, v); since original vertices are
    their own representatives, every live id is the minimum original id of
    the set of vertices merged into it.  This keeps naming stable across
    splits, codec round-trips and label files.
    """

    __slots__ = ("_vertices", "_black", "_red", "_badj", "_radj", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        black_edges: Iterable[tuple[int, int]] = (),
        red_edges: Iterable[tuple[int, int]] = (),
    ):
        vs = frozenset(vertices)
        black = frozenset(_norm(u, v) for u, v in black_edges)
        red = frozenset(_norm(u, v) for u, v in red_edges)
        if black & red:
            raise TrigraphError(f"edges both black and red: {sorted(black & red)}")
        for u, v in black | red:
            if u not in vs or v not in vs:
                raise TrigraphError(f"edge ({u},{v}) has endpoint outside vertex set")
        for v in vs:
            if v < 0:
                raise TrigraphError(f"negative vertex id {v}")
        badj: dict[int, set[int]] = {v: set() for v in vs}
        radj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in black:
            badj[u].add(v)
            badj[v].add(u)
        for u, v in red:
            radj[u].add(v)
            radj[v].add(u)
        self._vertices = vs
        self._black = black
        self._red = red
        self._badj = {v: frozenset(s) for v, s in badj.items()}
        self._radj = {v: frozenset(s) for v, s in radj.items()}
        self._hash: Optional[int] = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Trigraph":
        return cls(range(n))

    @classmethod
    def complete(cls, n: int) -> "Trigraph":
        return cls(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def path(cls, n: int) -> "Trigraph":
        return cls(range(n), [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Trigraph":
        if n < 3:
            raise TrigraphError("cycle needs at least 3 vertices")
        return cls(range(n), [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Trigraph":
        return cls(range(n), edges)

    def all_red(self) -> "Trigraph":
        """Copy with every edge turned red."""
        return Trigraph(self._vertices, (), self._black | self._red)

    def relabel(self, mapping: dict[int, int]) -> "Trigraph":
        m = mapping.__getitem__
        return Trigraph(
            (m(v) for v in self._vertices),
            ((m(u), m(v)) for u, v in self._black),
            ((m(u), m(v)) for u, v in self._red),
        )

    # -- accessors ---------------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def black_edges(self) -> frozenset[tuple[int, int]]:
        return self._black

    @property
    def red_edges(self) -> frozenset[tuple[int, int]]:
        return self._red

    @property
    def n(self) -> int:
        return len(self._vertices)

    def is_graph(self) -> bool:
        return not self._red

    def black_neighbors(self, v: int) -> frozenset[int]:
        return self._badj[v]

    def red_neighbors(self, v: int) -> frozenset[int]:
        return self._radj[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._badj[v] | self._radj[v]

    def degree(self, v: int) -> int:
        return len(self._badj[v]) + len(self._radj[v])

    def black_degree(self, v: int) -> int:
        return len(self._badj[v])

    def red_degree(self, v: int) -> int:
        return len(self._radj[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._vertices), default=0)

    def relation(self, u: int, v: int) -> int:
        """NONE, BLACK or RED for the pair u, v (u != v)."""
        if u == v:
            raise TrigraphError("relation of a vertex with itself is undefined")
        if v in self._badj[u]:
            return BLACK
        if v in self._radj[u]:
            return RED
        return NONE

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trigraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._black == other._black
            and self._red == other._red
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, self._black, self._red))
        return self._hash

    def __repr__(self) -> str:
        return (
            f"Trigraph(n={self.n}, black={len(self._black)}, red={len(self._red)})"
        )


def max_red_degree(g: Trigraph) -> int:
    """Maximum number of red edges at a single vertex; 0 for the empty graph."""
    return max((g.red_degree(v) for v in g.vertices), default=0)


# -- contraction ------------------------------------------------------------


def contract(g: Trigraph, u: int, v: int) -> tuple[Trigraph, int]:
    """Contract u and v into w = min(u, v) and return (new trigraph, w).

    Vertices in N(u) xor N(v) become red neighbors of w; common neighbors
    stay black only when both edges were black.  Edges not touching u or v
    are unchanged.
    """
    if u not in g.vertices or v not in g.vertices:
        raise TrigraphError(f"cannot contract ({u},{v}): unknown vertex")
    if u == v:
        raise TrigraphError(f"cannot contract vertex {u} with itself")
    w = min(u, v)
    dropped = {u, v}
    nu = g.neighbors(u) - dropped
    nv = g.neighbors(v) - dropped
    black = set()
    red = set()
    for e in g.black_edges:
        if u in e or v in e:
            continue
        black.add(e)
    for e in g.red_edges:
        if u in e or v in e:
            continue
        red.add(e)
    for x in nu | nv:
        if x in nu and x in nv and g.relation(u, x) == BLACK and g.relation(v, x) == BLACK:
            black.add(_norm(w, x))
        else:
            red.add(_norm(w, x))
    verts = (g.vertices - dropped) | {w}
    return Trigraph(verts, black, red), w


# -- sequences ---------------------------------------------------------------


@dataclass(frozen=True)
class ContractionStep:
    """One contraction; w is the merged vertex, always min(u, v)."""

    u: int
    v: int
    w: int

    def __post_init__(self):
        if self.u == self.v:
            raise TrigraphError("contraction step with equal endpoints")
        if self.w != min(self.u, self.v):
            raise TrigraphError("merged vertex must be min(u, v)")

    @classmethod
    def of(cls, u: int, v: int) -> "ContractionStep":
        return cls(u, v, min(u, v))


@dataclass(frozen=True)
class ContractionSequence:
    steps: tuple[ContractionStep, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ContractionSequence":
        return cls(tuple(ContractionStep.of(u, v) for u, v in pairs))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[ContractionStep]:
        return iter(self.steps)


@dataclass(frozen=True)
class ParallelStep:
    """A set of disjoint vertex pairs contracted simultaneously."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen: set[int] = set()
        for u, v in self.pairs:
            if u == v:
                raise TrigraphError("parallel step pair with equal endpoints")
            if u in seen or v in seen:
                raise TrigraphError("parallel step pairs must be disjoint")
            seen.add(u)
            seen.add(v)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "ParallelStep":
        return cls(frozenset(_norm(u, v) for u, v in pairs))

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)


@dataclass(frozen=True)
class ParallelSequence:
    steps: tuple[ParallelStep, ...]

    @classmethod
    def of(cls, steps: Iterable[Iterable[tuple[int, int]]]) -> "ParallelSequence":
        return cls(tuple(ParallelStep.of(s) for s in steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[ParallelStep]:
        return iter(self.steps)


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    width: int
    error_index: Optional[int] = None
    error: Optional[str] = None


def verify_sequence(g: Trigraph, seq: ContractionSequence) -> VerifyReport:
    """Check applicability and measure width (max red degree, G included).

    Invalid sequences report the first inapplicable step index; a sequence is
    valid only if it ends at a single vertex.
    """
    width = max_red_degree(g)
    cur = g
    for i, step in enumerate(seq.steps):
        if step.u not in cur.vertices or step.v not in cur.vertices:
            return VerifyReport(False, width, i, f"step {i}: dead endpoint in ({step.u},{step.v})")
        cur, _ = contract(cur, step.u, step.v)
        width = max(width, max_red_degree(cur))
    if cur.n != 1:
        return VerifyReport(False, width, None, f"sequence ends with {cur.n} vertices")
    return VerifyReport(True, width)


def apply_parallel(g: Trigraph, step: ParallelStep) -> Trigraph:
    """Contract all pairs of a parallel step; order-independent by design."""
    cur = g
    for u, v in step.sorted_pairs():
        if u not in cur.vertices or v not in cur.vertices:
            raise TrigraphError(f"parallel step touches dead vertex in ({u},{v})")
        cur, _ = contract(cur, u, v)
    return cur


def parallel_trace(g: Trigraph, pseq: ParallelSequence) -> list[Trigraph]:
    """All stages G = G_0, ..., G_k of a parallel sequence."""
    trace = [g]
    for step in pseq.steps:
        trace.append(apply_parallel(trace[-1], step))
    return trace


def verify_parallel(g: Trigraph, pseq: ParallelSequence) -> VerifyReport:
    """Width of a parallel sequence = max red degree over its stages."""
    try:
        trace = parallel_trace(g, pseq)
    except TrigraphError as exc:
        return VerifyReport(False, max_red_degree(g), None, str(exc))
    if trace[-1].n != 1:
        return VerifyReport(False, max(max_red_degree(t) for t in trace), None,
                            f"sequence ends with {trace[-1].n} vertices")
    return VerifyReport(True, max(max_red_degree(t) for t in trace))


def sequentialize(g: Trigraph, pseq: ParallelSequence) -> ContractionSequence:
    """Flatten a parallel sequence into single contractions.

    Any order of the pairs within a step yields width at most 2d+1 when the
    parallel sequence has width d; pairs are taken in sorted order for
    determinism.
    """
    report = verify_parallel(g, pseq)
    if not report.valid:
        raise TrigraphError(f"invalid parallel sequence: {report.error}")
    steps = []
    for step in pseq.steps:
        steps.extend(ContractionStep.of(u, v) for u, v in step.sorted_pairs())
    return ContractionSequence(tuple(steps))


# -- split (inverse contraction) ---------------------------------------------


@dataclass(frozen=True)
class SplitSpec:
    """Record describing how to undo a contraction.

    u and v are the children (min(u, v) must equal the split vertex), uv the
    relation between them, and reds lists (z, u-z relation, v-z relation) for
    every red neighbor z of the split vertex.  Non-red neighbors keep their
    relation to both children.  The layout mirrors one codec record.
    """

    u: int
    v: int
    uv: int
    reds: tuple[tuple[int, int, int], ...] = ()


def split(g: Trigraph, w: int, spec: SplitSpec) -> Trigraph:
    """Inverse of contract: contract(split(g, w, spec), u, v) == g."""
    if w not in g.vertices:
        raise TrigraphError(f"unknown vertex {w}")
    u, v = spec.u, spec.v
    if min(u, v) != w:
        raise TrigraphError(f"split children ({u},{v}) do not merge back to {w}")
    other = max(u, v)
    if other in g.vertices:
        raise TrigraphError(f"new vertex id {other} already in use")
    if spec.uv not in (NONE, BLACK, RED):
        raise TrigraphError(f"bad u-v relation code {spec.uv}")
    red_nbrs = g.red_neighbors(w)
    listed = {z for z, _, _ in spec.reds}
    if len(listed) != len(spec.reds):
        raise TrigraphError("duplicate red neighbor in split spec")
    if listed != red_nbrs:
        raise TrigraphError(
            f"split spec red neighbors {sorted(listed)} do not match {sorted(red_nbrs)}"
        )
    black = set(e for e in g.black_edges if w not in e)
    red = set(e for e in g.red_edges if w not in e)

    def add(a: int, b: int, rel: int):
        if rel == BLACK:
            black.add(_norm(a, b))
        elif rel == RED:
            red.add(_norm(a, b))

    add(u, v, spec.uv)
    for x in g.black_neighbors(w):
        add(u, x, BLACK)
        add(v, x, BLACK)
    for z, ru, rv in spec.reds:
        if ru not in (NONE, BLACK, RED) or rv not in (NONE, BLACK, RED):
            raise TrigraphError(f"bad relation code for red neighbor {z}")
        # contracting back must reproduce a red edge w-z
        if (ru, rv) in ((BLACK, BLACK), (NONE, NONE)):
            raise TrigraphError(
                f"relations ({ru},{rv}) to {z} would not contract back to red"
            )
        add(u, z, ru)
        add(v, z, rv)
    verts = (g.vertices - {w}) | {u, v}
    return Trigraph(verts, black, red)


def split_spec_of(g: Trigraph, u: int, v: int) -> SplitSpec:
    """The record that lets split() undo contract(g, u, v)."""
    if u not in g.vertices or v not in g.vertices or u == v:
        raise TrigraphError(f"bad contraction pair ({u},{v})")
    contracted, w = contract(g, u, v)
    reds = tuple(
        (z, g.relation(u, z), g.relation(v, z))
        for z in sorted(contracted.red_neighbors(w))
    )
    return SplitSpec(u=u, v=v, uv=g.relation(u, v), reds=reds)


# -- greedy parallel sequences ------------------------------------------------


def greedy_parallel_sequence(
    g: Trigraph, d: int, seed: int = 0, restarts: int = 0
) -> Optional[ParallelSequence]:
    """Maximal parallel d-contractions, or None if some stage has no move.

    Each step greedily collects disjoint pairs, scanned in lexicographic
    order, accepting a pair only if contracting it on the working trigraph
    keeps every red degree at most d.  With restarts > 0, failed attempts are
    retried with seed-shuffled candidate orders.
    """
    attempts = 1 + max(0, restarts)
    rng = random.Random(seed)
    for attempt in range(attempts):
        shuffle = attempt > 0
        pseq = _greedy_once(g, d, rng if shuffle else None)
        if pseq is not None:
            return pseq
    return None


def _greedy_once(g: Trigraph, d: int, rng: Optional[random.Random]) -> Optional[ParallelSequence]:
    if max_red_degree(g) > d:
        return None
    cur = g
    steps: list[ParallelStep] = []
    while cur.n > 1:
        work = cur
        used: set[int] = set()
        pairs: list[tuple[int, int]] = []
        verts = sorted(cur.vertices)
        candidates = [(u, v) for i, u in enumerate(verts) for v in verts[i + 1:]]
        if rng is not None:
            rng.shuffle(candidates)
        for u, v in candidates:
            if u in used or v in used:
                continue
            trial, _ = contract(work, u, v)
            if max_red_degree(trial) <= d:
                work = trial
                used.add(u)
                used.add(v)
                pairs.append((u, v))
        if not pairs:
            return None
        steps.append(ParallelStep.of(pairs))
        cur = work
    return ParallelSequence(tuple(steps))
