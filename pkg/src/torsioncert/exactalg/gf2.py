"""Bit-packed linear algebra over F_2.

Rows are packed little-endian into uint64 words so a row operation is a single
vectorised XOR.
"""

from typing import Optional

import numpy as np

from torsioncert.core.constants import KERNEL_ENUMERATION_CAP

WORD = 64


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix (m x n) into an (m x ceil(n/64)) uint64 array."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    m, n = bits.shape
    width = max(1, (n + WORD - 1) // WORD) * WORD
    padded = np.zeros((m, width), dtype=np.uint8)
    padded[:, :n] = bits
    packed = np.packbits(padded, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(m, width // WORD)


def unpack_rows(packed: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of ``pack_rows``."""
    as_bytes = np.ascontiguousarray(packed).view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=-1, bitorder="little")
    return bits[:, :ncols].astype(np.uint8)


def _column_bits(packed: np.ndarray, col: int) -> np.ndarray:
    word, offset = divmod(col, WORD)
    return (packed[:, word] >> np.uint64(offset)) & np.uint64(1)


def _eliminate(packed: np.ndarray, ncols: int) -> int:
    """Row-reduce ``packed`` in place over its first ncols columns; returns the rank."""
    rank = 0
    nrows = packed.shape[0]
    for col in range(ncols):
        if rank == nrows:
            break
        column = _column_bits(packed, col)
        candidates = np.nonzero(column[rank:])[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            packed[[rank, pivot]] = packed[[pivot, rank]]
            column[[rank, pivot]] = column[[pivot, rank]]
        hits = np.nonzero(column)[0]
        hits = hits[hits != rank]
        if hits.size:
            packed[hits] ^= packed[rank]
        rank += 1
    return rank


def gf2_rank(packed: np.ndarray, ncols: Optional[int] = None) -> int:
    """Rank over F_2 of a packed matrix."""
    work = np.array(packed, dtype=np.uint64, copy=True)
    if ncols is None:
        ncols = work.shape[1] * WORD
    return _eliminate(work, ncols)


def gf2_left_kernel(bits: np.ndarray) -> np.ndarray:
    """Basis of {x in F_2^m : x M = 0} as rows of a 0/1 array (k x m).

    Each row of M is tagged with its unit vector; rows whose M-part reduces to
    zero carry a dependency in their tag.
    """
    bits = np.asarray(bits, dtype=np.uint8) & 1
    m, n = bits.shape
    augmented = np.concatenate([bits, np.eye(m, dtype=np.uint8)], axis=1)
    packed = pack_rows(augmented)
    rank = _eliminate(packed, n)
    reduced = unpack_rows(packed, n + m)
    return reduced[rank:, n:].copy()


def min_dependency_weight(
    kernel: np.ndarray, cap: int = KERNEL_ENUMERATION_CAP
) -> Optional[int]:
    """Smallest Hamming weight of a nonzero kernel vector.

    Enumerates all 2^k - 1 combinations, so returns None when k exceeds ``cap``
    or the kernel is trivial.
    """
    k = kernel.shape[0]
    if k == 0 or k > cap:
        return None
    packed = pack_rows(kernel)
    best: Optional[int] = None
    current = np.zeros(packed.shape[1], dtype=np.uint64)
    # Gray code walk: one XOR per step
    for step in range(1, 1 << k):
        flip = (step & -step).bit_length() - 1
        current ^= packed[flip]
        weight = int(sum(bin(int(word)).count("1") for word in current))
        if best is None or weight < best:
            best = weight
    return best
