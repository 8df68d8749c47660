"""Dense-sparse decomposition for subset rank-select.

Keep one symbol per nonempty set (the minimum, so the choice is
deterministic; any choice gives the same answers) in a regular base string
of length n - n0, and record every removed symbol c as a set bit at its set
position in a per-symbol sparse bitvector. Together with the empty-position
bitvector E, a subset-rank query is three ranks: one on E to skip empties,
one on the base string, one on the overflow vector of the queried symbol.

Select has no direct analog here; it binary-searches the monotone rank,
costing O(log n) rank calls, which keeps the structure at its headline
space instead of adding a merged select index.
"""

from __future__ import annotations

import numpy as np

from .bitvector import SparseBitvector
from .degenerate import DegenerateString
from .reductions import _build_base

KEEP_CHOICES = ("min", "max")


class DsdStructure:
    structure_name = "dsd"

    def __init__(self, x: DegenerateString, base: str = "wavelet",
                 block_words: int = 8, keep: str = "min"):
        if keep not in KEEP_CHOICES:
            raise ValueError(f"keep must be one of {KEEP_CHOICES}, got {keep!r}")
        sizes = x.set_sizes()
        nonempty = sizes > 0
        self._E = SparseBitvector(x.n, np.flatnonzero(~nonempty))
        if keep == "min":
            kept_at = x.offsets[:-1][nonempty]
        else:
            kept_at = x.offsets[1:][nonempty] - 1
        kept = x.symbols.astype(np.int64)[kept_at]
        removed = np.ones(x.N, dtype=bool)
        removed[kept_at] = False
        rows = x.element_rows()
        syms = x.symbols.astype(np.int64)
        self._overflow = []
        for c in range(x.sigma):
            pos = rows[removed & (syms == c)]
            self._overflow.append(SparseBitvector(x.n, pos))
        self._base = _build_base(kept, x.sigma, base, block_words)
        self.sigma = x.sigma
        self.n = x.n
        self.N = x.N
        self.n0 = x.n - int(nonempty.sum())
        self.base_name = base
        self.block_words = block_words if base == "bitplane" else None
        self.keep = keep

    @classmethod
    def _assemble(cls, sigma: int, n: int, N: int, E: SparseBitvector,
                  base, overflow, base_name: str, block_words) -> "DsdStructure":
        self = cls.__new__(cls)
        self.sigma = sigma
        self.n = n
        self.N = N
        self.n0 = E.ones_count
        self._E = E
        self._base = base
        self._overflow = list(overflow)
        self.base_name = base_name
        self.block_words = block_words
        self.keep = "min"
        return self

    def _check(self, c: int) -> None:
        if not 0 <= c < self.sigma:
            raise IndexError(f"symbol {c} out of range for sigma {self.sigma}")

    def subset_rank(self, i: int, c: int) -> int:
        self._check(c)
        if not 0 <= i <= self.n:
            raise IndexError(f"prefix {i} out of range for length {self.n}")
        dense = i - self._E.rank(i, 1)
        return self._base.rank(dense, c) + self._overflow[c].rank(i, 1)

    def subset_rank_many(self, i, c) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if c.ndim == 0:
            c = np.full(i.shape, int(c), dtype=np.int64)
        if i.size and (i.min() < 0 or i.max() > self.n):
            raise IndexError("prefix out of range")
        if c.size and (c.min() < 0 or c.max() >= self.sigma):
            raise IndexError("symbol out of range")
        dense = i - self._E.rank_many(i, 1)
        out = self._base.rank_many(dense, c)
        for cc in range(self.sigma):
            m = c == cc
            if m.any():
                out[m] += self._overflow[cc].rank_many(i[m], 1)
        return out

    def containing_count(self, c: int) -> int:
        return self.subset_rank(self.n, c)

    def subset_select(self, j: int, c: int) -> int:
        self._check(c)
        total = self.containing_count(c)
        if not 1 <= j <= total:
            raise ValueError(f"select({j}, {c}) out of range: only {total} containing sets")
        lo, hi = 0, self.n  # smallest i with subset_rank(i+1) = j is hi-1 at loop end
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.subset_rank(mid, c) >= j:
                hi = mid
            else:
                lo = mid
        return hi - 1

    def subset_select_many(self, j, c) -> np.ndarray:
        j = np.asarray(j, dtype=np.int64)
        c = np.asarray(c, dtype=np.int64)
        if c.ndim == 0:
            c = np.full(j.shape, int(c), dtype=np.int64)
        if j.size == 0:
            return np.zeros(0, dtype=np.int64)
        if c.size and (c.min() < 0 or c.max() >= self.sigma):
            raise IndexError("symbol out of range")
        totals = np.array([self.containing_count(cc) for cc in range(self.sigma)])
        if j.min() < 1 or np.any(j > totals[c]):
            raise ValueError("select batch out of range")
        lo = np.zeros(j.size, dtype=np.int64)
        hi = np.full(j.size, self.n, dtype=np.int64)
        while True:
            open_ = hi - lo > 1
            if not open_.any():
                break
            mid = (lo + hi) // 2
            r = self.subset_rank_many(np.where(open_, mid, 0), c)
            ge = open_ & (r >= j)
            lt = open_ & (r < j)
            hi[ge] = mid[ge]
            lo[lt] = mid[lt]
        return hi - 1

    def size_breakdown(self) -> dict:
        out = {"E": self._E.size_bits(), "base": self._base.size_bits()}
        for c, ov in enumerate(self._overflow):
            out[f"overflow[{c}]"] = ov.size_bits()
        return out

    def size_bits(self) -> int:
        return sum(self.size_breakdown().values())

    def overflow_counts(self) -> np.ndarray:
        return np.array([ov.ones_count for ov in self._overflow], dtype=np.int64)

    def components(self):
        return self._E, self._base, self._overflow

    def decompose(self) -> DegenerateString:
        """Reconstruct the instance: kept symbol plus overflow members per set."""
        counts = np.zeros(self.n, dtype=np.int64)
        mask = np.ones(self.n, dtype=bool)
        mask[self._E.positions()] = False
        counts[mask] += 1
        for ov in self._overflow:
            counts[ov.positions()] += 1
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        fill = offsets[:-1].copy()
        syms = np.zeros(offsets[-1], dtype=np.int64)
        dense_idx = np.flatnonzero(mask)
        for c in range(self.sigma):
            total = self._base.symbol_count(c)
            if total:
                js = np.arange(1, total + 1, dtype=np.int64)
                rows = dense_idx[self._base.select_many(js, c)]
                syms[fill[rows]] = c
                fill[rows] += 1
            pos = self._overflow[c].positions()
            if pos.size:
                syms[fill[pos]] = c
                fill[pos] += 1
        # members were appended kept-first then by symbol; sort inside sets
        out = DegenerateString(self.sigma, syms, offsets, validate=False)
        order = np.argsort(out.element_rows() * (self.sigma + 1) + syms, kind="stable")
        return DegenerateString(self.sigma, syms[order], offsets, validate=False)

    def __repr__(self) -> str:
        return (f"DsdStructure(sigma={self.sigma}, n={self.n}, N={self.N}, "
                f"n0={self.n0}, base={self.base_name}, keep={self.keep})")


def build_dsd(x: DegenerateString, base: str = "wavelet", block_words: int = 8,
              keep: str = "min") -> DsdStructure:
    return DsdStructure(x, base, block_words, keep)
