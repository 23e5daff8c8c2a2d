"""Little-endian bit stream helpers shared by the label and codec formats.

Bit i of a stream lives in byte i // 8 at bit position i % 8; multi-bit
fields are written least-significant bit first.
"""

from __future__ import annotations


class BitWriter:
    def __init__(self):
        self._bits: list[int] = []

    def write_uint(self, value: int, width: int) -> None:
        if value < 0 or (width < value.bit_length()):
            raise ValueError(f"value {value} does not fit in {width} bits")
        for k in range(width):
            self._bits.append((value >> k) & 1)

    def write_bit(self, bit: int) -> None:
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        self._bits.append(bit)

    @property
    def bit_length(self) -> int:
        return len(self._bits)

    def to_bytes(self) -> bytes:
        out = bytearray((len(self._bits) + 7) // 8)
        for i, b in enumerate(self._bits):
            if b:
                out[i // 8] |= 1 << (i % 8)
        return bytes(out)

    def value(self) -> int:
        """The stream as one integer, bit 0 least significant."""
        acc = 0
        for i, b in enumerate(self._bits):
            acc |= b << i
        return acc


class BitReader:
    def __init__(self, data: bytes, bit_length: int | None = None):
        self._data = data
        self._pos = 0
        self._len = len(data) * 8 if bit_length is None else bit_length
        if self._len > len(data) * 8:
            raise ValueError("declared bit length exceeds the data")

    @property
    def remaining(self) -> int:
        return self._len - self._pos

    def read_uint(self, width: int) -> int:
        if width > self.remaining:
            raise ValueError("truncated bit stream")
        acc = 0
        for k in range(width):
            i = self._pos + k
            acc |= ((self._data[i // 8] >> (i % 8)) & 1) << k
        self._pos += width
        return acc

    def read_bit(self) -> int:
        return self.read_uint(1)
