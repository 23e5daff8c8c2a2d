"""Adjacency labels built from a parallel contraction sequence.

Each vertex carries one fixed-width record per parallel step: a parent-side
bit, the color between the two children of its parent, and the colors
toward both children of each numbered red neighbor of the parent.  The
decoder walks two labels from the oldest record outward and answers
0 / 1 / r_j for any ordered vertex pair without the graph; for red answers
the subscript j is unique among the red edges at the first argument.

Label length is exactly k * ceil(1 + (2d+1) log2(3)) bits for a sequence of
k parallel steps and red-degree bound d: one bit for the parent side and
the 2d+1 ternary colors of a record packed as a single base-3 integer,
least significant trit first.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .trigraph import (
    BLACK,
    NONE,
    RED,
    ParallelSequence,
    Trigraph,
    TrigraphError,
    max_red_degree,
    parallel_trace,
)

_COLOR_R = 2  # ternary color code for red, matching the relation constants


class LabelingError(ValueError):
    pass


def record_width(d: int) -> int:
    """Bits per step: 1 + ceil((2d+1) * log2(3)), computed exactly."""
    trits = 2 * d + 1
    return 1 + (3**trits).bit_length()


@dataclass(frozen=True)
class LabelScheme:
    n: int
    d: int
    k: int

    @property
    def width(self) -> int:
        return record_width(self.d)

    @property
    def label_bits(self) -> int:
        return self.k * self.width


@dataclass(frozen=True)
class Label:
    """Bitstring as an integer (bit 0 first) plus its owner vertex id."""

    owner: int
    value: int
    bits: int

    def __len__(self) -> int:
        return self.bits


def _pack_record(c: int, colors: list[int], d: int) -> int:
    """c bit, then 2d+1 ternary colors base-3 packed, LSB-trit first."""
    assert len(colors) == 2 * d + 1
    acc = 0
    for col in reversed(colors):
        acc = acc * 3 + col
    width = record_width(d)
    packed = c | (acc << 1)
    assert packed < (1 << width)
    return packed


def _unpack_record(packed: int, d: int) -> tuple[int, list[int]]:
    c = packed & 1
    acc = packed >> 1
    colors = []
    for _ in range(2 * d + 1):
        colors.append(acc % 3)
        acc //= 3
    return c, colors


def build_labels(
    g: Trigraph, pseq: ParallelSequence, d: Optional[int] = None
) -> tuple[LabelScheme, dict[int, Label]]:
    """Labels for every vertex of g from a parallel sequence of width <= d.

    d defaults to the measured width.  Construction walks the sequence
    backwards from the single-vertex end, extending every label by exactly
    one record per step.
    """
    trace = parallel_trace(g, pseq)
    if trace[-1].n != 1:
        raise LabelingError("parallel sequence does not end at a single vertex")
    measured = max(max_red_degree(t) for t in trace)
    if d is None:
        d = measured
    elif measured > d:
        raise LabelingError(f"sequence width {measured} exceeds declared d={d}")
    k = len(pseq.steps)
    scheme = LabelScheme(n=g.n, d=d, k=k)
    width = scheme.width

    labels: dict[int, int] = {v: 0 for v in trace[-1].vertices}
    # red_order[x]: red neighbors of x in the current stage, in the
    # enumeration order of the red slots of x's newest record
    red_order: dict[int, list[int]] = {v: [] for v in trace[-1].vertices}

    for step_idx in range(k - 1, -1, -1):
        before = trace[step_idx]
        after = trace[step_idx + 1]
        parent_of: dict[int, tuple[int, int]] = {}
        children: dict[int, tuple[int, Optional[int]]] = {v: (v, None) for v in after.vertices}
        for u, v in sorted(pseq.steps[step_idx].pairs):
            p0, p1 = min(u, v), max(u, v)
            children[p0] = (p0, p1)
        for x, (c0, c1) in children.items():
            parent_of[c0] = (x, 0)
            if c1 is not None:
                parent_of[c1] = (x, 1)
        new_labels: dict[int, int] = {}
        new_red_order: dict[int, list[int]] = {}
        shift = (k - 1 - step_idx) * width
        for y in before.vertices:
            x, c = parent_of[y]
            p0, p1 = children[x]
            colors = []
            # field: color between the two children of the parent
            sibling_color = NONE
            if p1 is not None:
                sibling_color = before.relation(p0, p1)
            colors.append(sibling_color)
            slot_vertex: list[Optional[int]] = [None]
            # fields: colors toward both children of each red neighbor of x
            reds_of_x = red_order[x]
            for j in range(d):
                nb = reds_of_x[j] if j < len(reds_of_x) else None
                for cprime in (0, 1):
                    if nb is None:
                        colors.append(NONE)
                        slot_vertex.append(None)
                        continue
                    q0, q1 = children[nb]
                    target = q0 if cprime == 0 else q1
                    if target is None:
                        colors.append(NONE)
                        slot_vertex.append(None)
                    else:
                        colors.append(before.relation(y, target))
                        slot_vertex.append(target)
            if p1 is not None:
                slot_vertex[0] = p1 if y == p0 else p0
            record = _pack_record(c, colors, d)
            new_labels[y] = labels[x] | (record << shift)
            order = [
                slot_vertex[idx]
                for idx, col in enumerate(colors)
                if col == _COLOR_R and slot_vertex[idx] is not None
            ]
            if len(order) != before.red_degree(y):
                raise AssertionError(
                    f"red slots of {y} do not cover its red edges"
                )
            new_red_order[y] = order
        if len(set(new_labels.values())) != len(new_labels):
            raise AssertionError("labels are not injective at an intermediate stage")
        labels = new_labels
        red_order = new_red_order

    out = {
        v: Label(owner=v, value=bits, bits=scheme.label_bits)
        for v, bits in labels.items()
    }
    if len({lab.value for lab in out.values()}) != len(out):
        raise AssertionError("labels are not injective")
    return scheme, out


def decode_adjacency(scheme: LabelScheme, lx: Label, ly: Label):
    """0, 1, or ("r", j) for the ordered pair (label owner x, label owner y).

    Pure function of the two bitstrings and the scheme parameters; the
    numbering j is the position of the red edge among the red-colored slots
    of x's newest relevant record.
    """
    if lx.bits != scheme.label_bits or ly.bits != scheme.label_bits:
        raise LabelingError("labels do not match the scheme parameters")
    answer = _decode(scheme.k, scheme.d, scheme.width, lx.value, ly.value)
    if answer is None:
        raise LabelingError("labels are identical; pairs must be distinct")
    return answer


def _decode(k: int, d: int, width: int, bx: int, by: int):
    """Returns 0 | 1 | ("r", j), or None when the labels coincide."""
    if bx == by:
        return None
    # k >= 1 here: empty labels are equal
    mask = (1 << ((k - 1) * width)) - 1
    px, py = bx & mask, by & mask
    rx = bx >> ((k - 1) * width)
    ry = by >> ((k - 1) * width)
    _, colors_x = _unpack_record(rx, d)
    if px == py:
        # same parent, so x and y are the two children: sibling color slot
        color = colors_x[0]
        return ("r", _red_index(colors_x, 0)) if color == _COLOR_R else color
    parent = _decode(k - 1, d, width, px, py)
    if parent in (NONE, BLACK):
        # a 0/1 relation between parents pins down the children's relation
        return parent
    _, j = parent
    cy = ry & 1
    slot = 1 + 2 * (j - 1) + cy
    color = colors_x[slot]
    return ("r", _red_index(colors_x, slot)) if color == _COLOR_R else color


def _red_index(colors: list[int], slot: int) -> int:
    """1-based position of the slot among the red-colored slots."""
    assert colors[slot] == _COLOR_R
    return sum(1 for s in range(slot + 1) if colors[s] == _COLOR_R)


def label_query_cost(samples: int = 2000, seed: int = 0):
    """Measured mean decode time on three benchmark graphs.

    Documentation helper: decoding reads O(k) fixed-size records per query;
    this reports wall-clock microseconds, it asserts nothing.
    """
    import random

    from .families import iterated_lift
    from .trigraph import greedy_parallel_sequence

    rng = random.Random(seed)
    results = []
    benches = []
    path = Trigraph.path(64)
    benches.append(("path64", path, greedy_parallel_sequence(path, 2)))
    cograph = _bench_cograph(64)
    benches.append(("cograph64", cograph, greedy_parallel_sequence(cograph, 0)))
    chain, wit = iterated_lift(4, seed=0)
    benches.append(("lifted_k4_64", chain[-1], wit))
    for name, graph, pseq in benches:
        if pseq is None:
            continue
        scheme, labels = build_labels(graph, pseq)
        verts = sorted(graph.vertices)
        pairs = [(rng.choice(verts), rng.choice(verts)) for _ in range(samples)]
        pairs = [(a, b) for a, b in pairs if a != b]
        start = time.perf_counter()
        for a, b in pairs:
            decode_adjacency(scheme, labels[a], labels[b])
        elapsed = time.perf_counter() - start
        results.append(
            {
                "graph": name,
                "n": graph.n,
                "k": scheme.k,
                "d": scheme.d,
                "label_bits": scheme.label_bits,
                "mean_us": 1e6 * elapsed / max(1, len(pairs)),
            }
        )
    return results


def _bench_cograph(n: int) -> Trigraph:
    g = Trigraph.empty(1)
    nxt = 1
    while g.n < n:
        v = nxt % (g.n)
        black = set(g.black_edges)
        for x in g.black_neighbors(v):
            black.add((min(nxt, x), max(nxt, x)))
        if nxt % 2:
            black.add((v, nxt))
        g = Trigraph(set(g.vertices) | {nxt}, black)
        nxt += 1
    return g
