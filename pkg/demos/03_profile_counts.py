"""Profile counts for the bundled disorders, by formula and by enumeration."""

import time

from profilegen import build_matrix, corpus_path, count_profiles, intern, load
from profilegen.generators import count_at_least

print("subsets of 3 with at least 1:", count_at_least(3, 1))
print("subsets of 5 with at least 3:", count_at_least(5, 3))
print()

for name in ("ssd", "gad", "pdd", "schizophrenia_a_g2", "schizophrenia_a_g4"):
    d, _ = load(corpus_path(f"{name}.gen"))
    n = count_profiles(d)
    t = time.perf_counter()
    rows = len(build_matrix(d, intern([d])))
    dt = time.perf_counter() - t
    print(f"{d.name:22} {n:>8,} profiles  (enumerated {rows:,} rows in {dt:.3f}s)")
