"""Whole-graph compression from a contraction sequence read backwards.

The payload opens with the identifier of the final surviving vertex on
ceil(log2 n) bits, followed by one fixed-width record per contraction, last
contraction first.  A record undoes one contraction: the ids of the merged
vertex and its two children, a 2-bit child-child relation, and exactly d
red-neighbor slots of id + two 2-bit relations each.  Unused slots carry
the sentinel id of the lower child (never a genuine red neighbor) with
zeroed relation bits, keeping every record exactly
(3 ceil(log2 n) + 2) + d (ceil(log2 n) + 4) bits and the whole payload
within (d+3) n ceil(log2 n) + (4d+2) n bits.

Decoding replays the records as vertex splits starting from the single
vertex, reconstructing the graph with its original ids (which must be
0..n-1 so that every id fits the field width).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bits import BitReader, BitWriter
from .trigraph import (
    BLACK,
    NONE,
    RED,
    ContractionSequence,
    SplitSpec,
    Trigraph,
    TrigraphError,
    contract,
    split,
    verify_sequence,
)


class CodecError(ValueError):
    pass


@dataclass(frozen=True)
class CodecBlob:
    n: int
    d: int
    payload: bytes
    bit_length: int

    @property
    def budget_bits(self) -> int:
        """(d+3) n ceil(log2 n) + (4d+2) n."""
        w = _id_width(self.n)
        return (self.d + 3) * self.n * w + (4 * self.d + 2) * self.n


def _id_width(n: int) -> int:
    return math.ceil(math.log2(n)) if n > 1 else 0


def record_bits(n: int, d: int) -> int:
    w = _id_width(n)
    return (3 * w + 2) + d * (w + 4)


def codec_encode(g: Trigraph, seq: ContractionSequence, d: int) -> CodecBlob:
    """Encode a graph given a contraction sequence of width at most d.

    Vertex ids must be 0..n-1.  The sequence is replayed forward to collect
    each merged vertex's red neighborhood, then written backwards.
    """
    n = g.n
    if sorted(g.vertices) != list(range(n)):
        raise CodecError("codec requires vertex ids 0..n-1")
    rep = verify_sequence(g, seq)
    if not rep.valid:
        raise CodecError(f"invalid sequence: {rep.error}")
    if rep.width > d:
        raise CodecError(f"sequence width {rep.width} exceeds declared d={d}")
    w = _id_width(n)
    records = []
    cur = g
    final = None
    for step in seq.steps:
        u, v = step.u, step.v
        uv = cur.relation(u, v)
        nxt, merged = contract(cur, u, v)
        reds = tuple(
            (z, cur.relation(u, z), cur.relation(v, z))
            for z in sorted(nxt.red_neighbors(merged))
        )
        records.append((merged, u, v, uv, reds))
        cur = nxt
        final = merged
    if n == 1:
        (final,) = g.vertices
    writer = BitWriter()
    writer.write_uint(final, w)
    for merged, u, v, uv, reds in reversed(records):
        writer.write_uint(merged, w)
        writer.write_uint(u, w)
        writer.write_uint(v, w)
        writer.write_uint(uv, 2)
        if len(reds) > d:
            raise CodecError("red neighborhood larger than declared d")
        for z, ru, rv in reds:
            writer.write_uint(z, w)
            writer.write_uint(ru, 2)
            writer.write_uint(rv, 2)
        sentinel = u  # u is never a red neighbor of the merged vertex
        for _ in range(d - len(reds)):
            writer.write_uint(sentinel, w)
            writer.write_uint(0, 2)
            writer.write_uint(0, 2)
    blob = CodecBlob(n=n, d=d, payload=writer.to_bytes(), bit_length=writer.bit_length)
    if blob.bit_length > blob.budget_bits:
        raise AssertionError("payload exceeded the bit budget")
    return blob


def codec_decode(blob: CodecBlob) -> Trigraph:
    """Rebuild the graph by splitting vertices, first record last split."""
    n, d = blob.n, blob.d
    if n < 1:
        raise CodecError("empty graph")
    w = _id_width(n)
    expected = w + (n - 1) * record_bits(n, d)
    if blob.bit_length != expected:
        raise CodecError(
            f"payload is {blob.bit_length} bits, expected {expected}"
        )
    reader = BitReader(blob.payload, blob.bit_length)
    root = reader.read_uint(w)
    if root >= n:
        raise CodecError(f"root id {root} out of range")
    cur = Trigraph([root])
    for _ in range(n - 1):
        merged = reader.read_uint(w)
        u = reader.read_uint(w)
        v = reader.read_uint(w)
        uv = reader.read_uint(2)
        if uv == 3:
            raise CodecError("relation code 11 is invalid")
        reds = []
        seen = set()
        for _ in range(d):
            z = reader.read_uint(w)
            ru = reader.read_uint(2)
            rv = reader.read_uint(2)
            if 3 in (ru, rv):
                raise CodecError("relation code 11 is invalid")
            if z == u:
                if ru or rv:
                    raise CodecError("sentinel slot with nonzero relations")
                continue
            if z in seen:
                raise CodecError(f"duplicate red neighbor {z}")
            seen.add(z)
            reds.append((z, ru, rv))
        try:
            cur = split(cur, merged, SplitSpec(u=u, v=v, uv=uv, reds=tuple(reds)))
        except TrigraphError as exc:
            raise CodecError(f"malformed record: {exc}") from exc
    if reader.remaining:
        raise CodecError("trailing bits after the last record")
    return cur


# -- file format -----------------------------------------------------------------

_MAGIC = b"TWC1"


def write_blob(blob: CodecBlob) -> bytes:
    head = _MAGIC + blob.n.to_bytes(4, "little") + blob.d.to_bytes(4, "little")
    head += blob.bit_length.to_bytes(4, "little")
    return head + blob.payload


def read_blob(data: bytes) -> CodecBlob:
    if data[:4] != _MAGIC:
        raise CodecError("bad magic; not a codec blob")
    n = int.from_bytes(data[4:8], "little")
    d = int.from_bytes(data[8:12], "little")
    bits = int.from_bytes(data[12:16], "little")
    payload = data[16:]
    if len(payload) != (bits + 7) // 8:
        raise CodecError("payload length mismatch")
    return CodecBlob(n=n, d=d, payload=payload, bit_length=bits)
