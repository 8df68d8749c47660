"""
Containers and the benchmark loop
=================================

Built structures serialize to a single-file container; loading rebuilds
the query support and answers exactly as the fresh build did. The bench
driver times the batched query path and folds every answer into a
checksum, so equal checksums mean two structures agree on millions of
queries.
"""

import tempfile
from pathlib import Path

from degenrank import BenchConfig, build_reduction, generate, load, run_bench, save

x = generate(seed=21, n=200_000, sigma=8, profile="uniform")
st = build_reduction(x, "reduction-iii", "wavelet")

# round-trip through a container file
with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "inst.dgrs"
    save(st, path)
    print(f"container: {path.stat().st_size} bytes on disk")
    again = load(path)
assert again.decompose() == x

# same seed, same queries, same answers -> same checksum
cfg = BenchConfig(query_count=500_000, repeats=2, seed=3)
for label, target in [("fresh ", st), ("loaded", again)]:
    res = run_bench(target, cfg)
    print(f"{label}: {res.ns_per_query:7.1f} ns/query   "
          f"checksum {res.checksum:016x}")

# select throughput, and the CSV row the command-line tool prints
sel = run_bench(st, BenchConfig(query_count=200_000, repeats=2, seed=3,
                                query_kind="select"))
print(f"select: {sel.ns_per_query:7.1f} ns/query")
print(sel.csv_row())
