"""PDD against GAD: conditional generators, then the brute-force check.

Pass --brute to also run all 1.7 billion pair comparisons (a few seconds).
"""

import sys
import time

from profilegen import build_matrix, corpus_path, intern, load, mpcs, mpcs_max_conditional

pdd, _ = load(corpus_path("pdd.gen"))
gad, _ = load(corpus_path("gad.gen"))

t = time.perf_counter()
rep = mpcs_max_conditional(pdd, gad)
print(f"MPCS_max = {rep.value:.6f} (rounded {rep.value:.3f}) in {time.perf_counter() - t:.3f}s")
print(f"comparisons {rep.comparisons_before:,} -> {rep.comparisons_after}")
print(f"witness sizes {len(rep.result.witness[0])} and {len(rep.result.witness[1])}, "
      f"overlap {len(rep.result.witness[0] & rep.result.witness[1])}")

if "--brute" in sys.argv:
    table = intern([pdd, gad])
    t = time.perf_counter()
    brute = mpcs(build_matrix(pdd, table), build_matrix(gad, table), "max")
    print(f"brute force {brute.value:.12f} over {brute.comparisons:,} pairs "
          f"in {time.perf_counter() - t:.1f}s")
    print("difference", abs(brute.value - rep.value))
