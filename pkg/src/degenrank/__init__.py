"""Rank and select on degenerate strings.

A degenerate string is a sequence of subsets of an alphabet. The package
provides succinct structures answering subset-rank and subset-select
queries over such sequences, three reductions to ordinary string
rank-select, a dense-sparse decomposition, baseline oracles, space
accounting against the information-theoretic lower bound, and a small
benchmark driver behind the `degenrank` command.
"""

from __future__ import annotations

from .bench import BenchConfig, BenchResult, run_bench
from .bitvector import PlainBitvector, SparseBitvector
from .bounds import LowerBoundReport, SpaceAudit, lower_bound, space_audit
from .container import dumps, load, loads, save
from .degenerate import (
    DegenerateString,
    DegenStats,
    generate,
    parse_degenerate,
    serialize_degenerate,
    stats,
)
from .dsd import DsdStructure, build_dsd
from .oracle import oracle_rank, oracle_select
from .reductions import (
    ReductionI,
    ReductionII,
    ReductionIII,
    build_reduction,
)
from .strrank import BitPlaneRank, WaveletTree

__all__ = [
    "BenchConfig",
    "BenchResult",
    "BitPlaneRank",
    "DegenStats",
    "DegenerateString",
    "DsdStructure",
    "LowerBoundReport",
    "PlainBitvector",
    "ReductionI",
    "ReductionII",
    "ReductionIII",
    "SpaceAudit",
    "SparseBitvector",
    "WaveletTree",
    "build_dsd",
    "build_reduction",
    "dumps",
    "generate",
    "load",
    "loads",
    "lower_bound",
    "oracle_rank",
    "oracle_select",
    "parse_degenerate",
    "run_bench",
    "save",
    "serialize_degenerate",
    "space_audit",
    "stats",
]

__version__ = "0.1.0"
