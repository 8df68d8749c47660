"""Packed-word bit utilities shared by the rank-select structures."""

from __future__ import annotations

import numpy as np

WORD_BITS = 64

# MASK_LOW[k] has the k lowest bits set; MASK_LOW[0] == 0.  Kept as uint64 so
# that `word & MASK_LOW[k]` never promotes to a wider or signed dtype.
MASK_LOW = np.array([(1 << k) - 1 for k in range(WORD_BITS)], dtype=np.uint64)

_BYTE_SHIFTS = np.arange(8, dtype=np.uint64) * np.uint64(8)


def _build_select_in_byte() -> np.ndarray:
    table = np.zeros((256, 8), dtype=np.uint8)
    for b in range(256):
        t = 0
        for p in range(8):
            if (b >> p) & 1:
                table[b, t] = p
                t += 1
    return table


# SELECT_IN_BYTE[b, r] is the position of the (r+1)-th set bit of byte b.
SELECT_IN_BYTE = _build_select_in_byte()


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a uint8 0/1 array into little-endian words.

    Returns ``len(bits) // 64 + 1`` words so that the word holding position
    ``i`` exists for every boundary query ``0 <= i <= len(bits)``.
    """
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    n_words = bits.size // WORD_BITS + 1
    buf = np.zeros(n_words * 8, dtype=np.uint8)
    packed = np.packbits(bits, bitorder="little")
    buf[: packed.size] = packed
    return buf.view("<u8").astype(np.uint64, copy=False)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of pack_bits, trimmed to `length` bits."""
    raw = np.unpackbits(words.view(np.uint8), bitorder="little")
    return raw[:length]


def popcount(words: np.ndarray) -> np.ndarray:
    # np.bitwise_count returns uint8; widen before anything cumulative.
    return np.bitwise_count(words).astype(np.int64)


def select_in_word(word: int, r: int) -> int:
    """Position of the (r+1)-th set bit of a 64-bit word. r is 0-indexed."""
    w = word
    for _ in range(r):
        w &= w - 1
    return (w & -w).bit_length() - 1


def select_in_words(words: np.ndarray, ranks: np.ndarray) -> np.ndarray:
    """Vectorized select_in_word over matching arrays of words and ranks."""
    words = np.asarray(words, dtype=np.uint64)
    ranks = np.asarray(ranks, dtype=np.int64)
    byte_mat = ((words[:, None] >> _BYTE_SHIFTS[None, :]) & np.uint64(0xFF))
    cnt = np.bitwise_count(byte_mat).astype(np.int64)
    cum = np.cumsum(cnt, axis=1)
    byte_idx = (cum <= ranks[:, None]).sum(axis=1)
    rows = np.arange(words.size)
    r_in = ranks - (cum[rows, byte_idx] - cnt[rows, byte_idx])
    byte_vals = byte_mat[rows, byte_idx].astype(np.int64)
    return byte_idx * 8 + SELECT_IN_BYTE[byte_vals, r_in].astype(np.int64)
