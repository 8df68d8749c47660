"""Reductions from subset rank-select to regular string rank-select.

Three interchangeable constructions over a degenerate string X:

* ReductionI — requires no empty sets. S is the concatenation of the set
  contents (ascending inside each set), R a plain bitvector of length N+1
  with a 1 at the start of every set plus a trailing 1. subset-rank finds
  the start of set i via select on R and counts in S; subset-select finds
  the j-th c in S and maps its position back through rank on R.
* ReductionII — replaces every empty set with a singleton sentinel symbol
  sigma, then defers to ReductionI over the sigma+1 alphabet. The sentinel
  stays internal: the public alphabet is unchanged and sentinel queries are
  rejected.
* ReductionIII — keeps an empty-position bitvector E (sparse: n0 is tiny in
  the motivating workloads) plus ReductionI over X with empty sets removed.
  Ranks shift i by the empties before it; selects map back through the
  zeroes of E.

All queries are 0-indexed with half-open rank prefixes, like the rest of
the package; the worked-example test pins the conversion from the common
1-indexed formulation.
"""

from __future__ import annotations

import numpy as np

from .bitvector import PlainBitvector, SparseBitvector
from .degenerate import DegenerateString
from .strrank import BitPlaneRank, WaveletTree

BASES = ("wavelet", "bitplane")
VARIANTS = ("reduction-i", "reduction-ii", "reduction-iii")


def _build_base(symbols: np.ndarray, sigma: int, base: str, block_words: int):
    if base == "wavelet":
        return WaveletTree(symbols, max(sigma, 1))
    if base == "bitplane":
        if sigma > BitPlaneRank.SIGMA:
            raise ValueError(
                f"bitplane base supports alphabets up to {BitPlaneRank.SIGMA}, "
                f"needs {sigma}")
        return BitPlaneRank(symbols, block_words=block_words)
    raise ValueError(f"unknown base {base!r}, expected one of {BASES}")


class ReductionI:
    """Concatenation + boundary bitvector; requires every set nonempty."""

    structure_name = "reduction-i"

    def __init__(self, x: DegenerateString, base: str = "wavelet", block_words: int = 8):
        if x.n0:
            raise ValueError(f"reduction-i requires no empty sets, instance has {x.n0}")
        self.sigma = x.sigma
        self.n = x.n
        self.N = x.N
        self.n0 = 0
        self._S = _build_base(x.symbols.astype(np.int64), x.sigma, base, block_words)
        bits = np.zeros(x.N + 1, dtype=np.uint8)
        bits[x.offsets] = 1
        self._R = PlainBitvector(bits)
        self.base_name = base
        self.block_words = block_words if base == "bitplane" else None

    @classmethod
    def _assemble(cls, sigma: int, n: int, S, R: PlainBitvector,
                  base_name: str, block_words) -> "ReductionI":
        self = cls.__new__(cls)
        self.sigma = sigma
        self.n = n
        self.N = R.length - 1
        self.n0 = 0
        self._S = S
        self._R = R
        self.base_name = base_name
        self.block_words = block_words
        return self

    def _check(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise IndexError(f"symbol {c} out of range for sigma {self.sigma}")

    def subset_rank(self, i: int, c: int) -> int:
        self._check(c)
        if not 0 <= i <= self.n:
            raise IndexError(f"prefix {i} out of range for length {self.n}")
        k = self._R.select(i + 1, 1)  # start of set i in S
        return self._S.rank(k, c)

    def subset_select(self, j: int, c: int) -> int:
        self._check(c)
        k = self._S.select(j, c)
        return self._R.rank(k + 1, 1) - 1

    def subset_rank_many(self, i, c) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        if i.size and (i.min() < 0 or i.max() > self.n):
            raise IndexError("prefix out of range")
        k = self._R.select_many(i + 1, 1)
        return self._S.rank_many(k, c)

    def subset_select_many(self, j, c) -> np.ndarray:
        j = np.asarray(j, dtype=np.int64)
        if j.size == 0:
            return np.zeros(0, dtype=np.int64)
        k = self._S.select_many(j, c)
        return self._R.rank_many(k + 1, 1) - 1

    def containing_count(self, c: int) -> int:
        """Number of sets containing c (the select upper bound)."""
        return self.subset_rank(self.n, c)

    def size_breakdown(self) -> dict:
        return {"S": self._S.size_bits(), "R": self._R.size_bits()}

    def size_bits(self) -> int:
        return sum(self.size_breakdown().values())

    def _decompose_raw(self):
        """Rebuild (symbols, offsets) of the instance S and R were built on."""
        n_sets = self._R.ones_count - 1
        starts = self._R.select_many(np.arange(1, n_sets + 2, dtype=np.int64), 1)
        syms = np.zeros(self._R.length - 1, dtype=np.int64)
        for c in range(self._S.sigma):
            total = self._S.symbol_count(c)
            if total:
                js = np.arange(1, total + 1, dtype=np.int64)
                syms[self._S.select_many(js, c)] = c
        return syms, starts

    def decompose(self) -> DegenerateString:
        """Reconstruct the original instance from S and R."""
        syms, starts = self._decompose_raw()
        return DegenerateString(self.sigma, syms, starts, validate=False)

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(sigma={self.sigma}, n={self.n}, "
                f"N={self.N}, base={self.base_name})")


class ReductionII(ReductionI):
    """Sentinel transform: empty sets become singleton {sigma}, then ReductionI."""

    structure_name = "reduction-ii"

    def __init__(self, x: DegenerateString, base: str = "wavelet", block_words: int = 8):
        sizes = x.set_sizes()
        empty = sizes == 0
        n0 = int(empty.sum())
        sizes2 = np.where(empty, 1, sizes)
        offsets2 = np.zeros(x.n + 1, dtype=np.int64)
        np.cumsum(sizes2, out=offsets2[1:])
        symbols2 = np.empty(x.N + n0, dtype=np.int64)
        if x.N:
            empties_before = np.concatenate([[0], np.cumsum(empty)])
            dest = np.arange(x.N, dtype=np.int64) + empties_before[x.element_rows()]
            symbols2[dest] = x.symbols.astype(np.int64)
        symbols2[offsets2[:-1][empty]] = x.sigma  # sentinel
        inner = DegenerateString(x.sigma + 1, symbols2, offsets2, validate=False)
        super().__init__(inner, base, block_words)
        # public view: original alphabet, original size accounting
        self.sigma = x.sigma
        self.n0 = n0
        self.N = x.N

    @classmethod
    def _assemble_ii(cls, sigma: int, n: int, n0: int, S, R: PlainBitvector,
                     base_name: str, block_words) -> "ReductionII":
        self = cls.__new__(cls)
        self.sigma = sigma
        self.n = n
        self.N = R.length - 1 - n0
        self.n0 = n0
        self._S = S
        self._R = R
        self.base_name = base_name
        self.block_words = block_words
        return self

    def decompose(self) -> DegenerateString:
        syms, starts = self._decompose_raw()
        keep = syms != self.sigma  # drop the sentinel singletons
        sizes = np.diff(starts)
        set_of = np.repeat(np.arange(self.n, dtype=np.int64), sizes)
        counts = np.zeros(self.n, dtype=np.int64)
        np.add.at(counts, set_of[keep], 1)
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return DegenerateString(self.sigma, syms[keep], offsets, validate=False)


class ReductionIII:
    """Empty-position bitvector + ReductionI over the nonempty subsequence."""

    structure_name = "reduction-iii"

    def __init__(self, x: DegenerateString, base: str = "wavelet", block_words: int = 8):
        sizes = x.set_sizes()
        empty_pos = np.flatnonzero(sizes == 0)
        self._E = SparseBitvector(x.n, empty_pos)
        nonempty_sizes = sizes[sizes > 0]
        offsets2 = np.zeros(nonempty_sizes.size + 1, dtype=np.int64)
        np.cumsum(nonempty_sizes, out=offsets2[1:])
        inner = DegenerateString(x.sigma, x.symbols, offsets2, validate=False)
        self._inner = ReductionI(inner, base, block_words)
        self.sigma = x.sigma
        self.n = x.n
        self.N = x.N
        self.n0 = int(empty_pos.size)
        self.base_name = base
        self.block_words = block_words if base == "bitplane" else None

    @classmethod
    def _assemble(cls, sigma: int, n: int, E: SparseBitvector, inner: ReductionI,
                  base_name: str, block_words) -> "ReductionIII":
        self = cls.__new__(cls)
        self.sigma = sigma
        self.n = n
        self.N = inner.N
        self.n0 = E.ones_count
        self._E = E
        self._inner = inner
        self.base_name = base_name
        self.block_words = block_words
        return self

    def subset_rank(self, i: int, c: int) -> int:
        if not 0 <= i <= self.n:
            raise IndexError(f"prefix {i} out of range for length {self.n}")
        k = i - self._E.rank(i, 1)
        return self._inner.subset_rank(k, c)

    def subset_select(self, j: int, c: int) -> int:
        k = self._inner.subset_select(j, c)
        return self._E.select(k + 1, 0)

    def subset_rank_many(self, i, c) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        if i.size and (i.min() < 0 or i.max() > self.n):
            raise IndexError("prefix out of range")
        k = i - self._E.rank_many(i, 1)
        return self._inner.subset_rank_many(k, c)

    def subset_select_many(self, j, c) -> np.ndarray:
        j = np.asarray(j, dtype=np.int64)
        if j.size == 0:
            return np.zeros(0, dtype=np.int64)
        k = self._inner.subset_select_many(j, c)
        return self._E.select_many(k + 1, 0)

    def containing_count(self, c: int) -> int:
        return self._inner.subset_rank(self._inner.n, c)

    def size_breakdown(self) -> dict:
        inner = self._inner.size_breakdown()
        return {"S": inner["S"], "R": inner["R"], "E": self._E.size_bits()}

    def size_bits(self) -> int:
        return sum(self.size_breakdown().values())

    def decompose(self) -> DegenerateString:
        packed = self._inner.decompose()
        mask = np.ones(self.n, dtype=bool)
        mask[self._E.positions()] = False
        sizes = np.zeros(self.n, dtype=np.int64)
        sizes[mask] = np.diff(packed.offsets)
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        return DegenerateString(self.sigma, packed.symbols, offsets, validate=False)

    def __repr__(self) -> str:
        return (f"ReductionIII(sigma={self.sigma}, n={self.n}, N={self.N}, "
                f"n0={self.n0}, base={self.base_name})")


def normalize_variant(variant: str) -> str:
    v = variant.strip().lower()
    aliases = {
        "i": "reduction-i", "1": "reduction-i",
        "ii": "reduction-ii", "2": "reduction-ii",
        "iii": "reduction-iii", "3": "reduction-iii",
    }
    v = aliases.get(v, v)
    if v not in VARIANTS:
        raise ValueError(f"unknown reduction variant {variant!r}")
    return v


def build_reduction(x: DegenerateString, variant: str, base: str = "wavelet",
                    block_words: int = 8):
    """Build the requested reduction over x; see the class docstrings."""
    v = normalize_variant(variant)
    if v == "reduction-i":
        return ReductionI(x, base, block_words)
    if v == "reduction-ii":
        return ReductionII(x, base, block_words)
    return ReductionIII(x, base, block_words)
