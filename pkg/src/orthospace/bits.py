"""Python-int bitsets: bit i of a row is element i."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = ["iter_bits", "mask", "popcount", "select_bits", "transpose"]


def iter_bits(m: int) -> list[int]:
    """Indices of set bits, ascending."""
    if m < 64:
        out = []
        i = 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out
    raw = np.frombuffer(m.to_bytes((m.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def mask(indices: Iterable[int], n: int | None = None) -> int:
    idx = np.fromiter(indices, dtype=np.int64)
    if idx.size == 0:
        return 0
    width = int(idx.max()) + 1 if n is None else n
    bools = np.zeros(width, dtype=np.uint8)
    bools[idx] = 1
    return int.from_bytes(np.packbits(bools, bitorder="little").tobytes(), "little")


def popcount(m: int) -> int:
    return m.bit_count()


def _to_matrix(rows: Sequence[int], n: int) -> np.ndarray:
    nb = (n + 7) // 8
    buf = b"".join(r.to_bytes(nb, "little") for r in rows)
    return np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nb)


def transpose(rows: Sequence[int], block: int = 2048) -> list[int]:
    """Transpose an n x n bit matrix given as n row ints."""
    n = len(rows)
    if n == 0:
        return []
    nb = (n + 7) // 8
    packed = _to_matrix(rows, n)
    out = np.zeros((n, nb), dtype=np.uint8)
    for r0 in range(0, n, block):
        r1 = min(n, r0 + block)
        dense = np.unpackbits(packed[r0:r1], axis=1, bitorder="little", count=n)
        cols = np.packbits(dense.T, axis=1, bitorder="little")
        out[:, r0 // 8 : r0 // 8 + cols.shape[1]] |= cols
    return [int.from_bytes(out[i].tobytes(), "little") for i in range(n)]


def select_bits(m: int, positions: Sequence[int]) -> int:
    """Compress: bit k of the result is bit positions[k] of m."""
    if not positions:
        return 0
    nb = (max(positions) + 8) // 8
    raw = np.frombuffer(m.to_bytes(max(nb, (m.bit_length() + 7) // 8), "little"), dtype=np.uint8)
    dense = np.unpackbits(raw, bitorder="little")
    picked = dense[np.asarray(positions)]
    return int.from_bytes(np.packbits(picked, bitorder="little").tobytes(), "little")
