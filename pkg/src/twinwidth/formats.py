"""Text and binary file formats used by the command line tools.

Graph:     header "n m r", then m lines "u v" (black) and r lines "u v"
           (red), vertex ids 0..n-1.
Sequence:  lines "c u v", one contraction per line, in order.
Parallel:  blocks of "u v" lines separated by a line "--".
Matrix:    "n m" then n rows over the symbols 0, 1, r.
Ordering:  one vertex id per line.
Labels:    magic "TWL1", then n, d, k as little-endian u32, then per vertex
           a u32 id and the label bits padded to a byte boundary.
"""

from __future__ import annotations

import struct

from .bits import BitReader, BitWriter
from .labeling import Label, LabelScheme
from .trigraph import (
    ContractionSequence,
    ContractionStep,
    ParallelSequence,
    ParallelStep,
    Trigraph,
)


class FormatError(ValueError):
    pass


def write_graph(g: Trigraph) -> str:
    if sorted(g.vertices) != list(range(g.n)):
        raise FormatError("graph files require vertex ids 0..n-1")
    black = sorted(g.black_edges)
    red = sorted(g.red_edges)
    lines = [f"{g.n} {len(black)} {len(red)}"]
    lines += [f"{u} {v}" for u, v in black]
    lines += [f"{u} {v}" for u, v in red]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Trigraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty graph file")
    try:
        n, m, r = map(int, lines[0].split())
    except ValueError as exc:
        raise FormatError(f"bad graph header {lines[0]!r}") from exc
    if len(lines) != 1 + m + r:
        raise FormatError(f"expected {m}+{r} edge lines, got {len(lines) - 1}")

    def pair(ln: str) -> tuple[int, int]:
        try:
            u, v = map(int, ln.split())
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
        return u, v

    black = [pair(ln) for ln in lines[1 : 1 + m]]
    red = [pair(ln) for ln in lines[1 + m :]]
    try:
        return Trigraph(range(n), black, red)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_sequence(seq: ContractionSequence) -> str:
    return "".join(f"c {s.u} {s.v}\n" for s in seq.steps)


def parse_sequence(text: str) -> ContractionSequence:
    steps = []
    for ln in (s.strip() for s in text.splitlines()):
        if not ln:
            continue
        parts = ln.split()
        if parts[0] != "c" or len(parts) != 3:
            raise FormatError(f"bad sequence line {ln!r}")
        try:
            steps.append(ContractionStep.of(int(parts[1]), int(parts[2])))
        except ValueError as exc:
            raise FormatError(f"bad sequence line {ln!r}") from exc
    return ContractionSequence(tuple(steps))


def write_parallel(pseq: ParallelSequence) -> str:
    blocks = []
    for step in pseq.steps:
        blocks.append("".join(f"{u} {v}\n" for u, v in step.sorted_pairs()))
    return "--\n".join(blocks)


def parse_parallel(text: str) -> ParallelSequence:
    steps = []
    block: list[tuple[int, int]] = []
    for ln in (s.strip() for s in text.splitlines()):
        if ln == "--":
            if block:
                steps.append(block)
            block = []
            continue
        if not ln:
            continue
        try:
            u, v = map(int, ln.split())
        except ValueError as exc:
            raise FormatError(f"bad parallel line {ln!r}") from exc
        block.append((u, v))
    if block:
        steps.append(block)
    try:
        return ParallelSequence.of(steps)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_ordering(order: list[int]) -> str:
    return "".join(f"{v}\n" for v in order)


def parse_ordering(text: str) -> list[int]:
    out = []
    for ln in (s.strip() for s in text.splitlines()):
        if not ln:
            continue
        try:
            out.append(int(ln))
        except ValueError as exc:
            raise FormatError(f"bad ordering line {ln!r}") from exc
    return out


# -- label files --------------------------------------------------------------

_LABEL_MAGIC = b"TWL1"


def write_labels(scheme: LabelScheme, labels: dict[int, Label]) -> bytes:
    out = bytearray(_LABEL_MAGIC)
    out += struct.pack("<III", scheme.n, scheme.d, scheme.k)
    for vid in sorted(labels):
        lab = labels[vid]
        if lab.bits != scheme.label_bits:
            raise FormatError("label length does not match the scheme")
        w = BitWriter()
        w.write_uint(lab.value, scheme.label_bits)
        out += struct.pack("<I", vid)
        out += w.to_bytes()
    return bytes(out)


def read_labels(data: bytes) -> tuple[LabelScheme, dict[int, Label]]:
    if data[:4] != _LABEL_MAGIC:
        raise FormatError("bad magic; not a label file")
    n, d, k = struct.unpack_from("<III", data, 4)
    scheme = LabelScheme(n=n, d=d, k=k)
    nbytes = (scheme.label_bits + 7) // 8
    labels = {}
    pos = 16
    for _ in range(n):
        if pos + 4 + nbytes > len(data):
            raise FormatError("truncated label file")
        (vid,) = struct.unpack_from("<I", data, pos)
        pos += 4
        reader = BitReader(data[pos : pos + nbytes], scheme.label_bits)
        value = reader.read_uint(scheme.label_bits) if scheme.label_bits else 0
        pos += nbytes
        labels[vid] = Label(owner=vid, value=value, bits=scheme.label_bits)
    if pos != len(data):
        raise FormatError("trailing bytes in label file")
    return scheme, labels
