"""Two toy disorders: 256 comparisons shrink to one."""

from profilegen import build_matrix, corpus_path, intern, load, mpcs
from profilegen.reducer import conditional_pair, force_symptoms, minimize_fillers, segment
from profilegen.spec_io import format_generator

A, _ = load(corpus_path("toy_a.gen"))   # at least 3 of a..e
B, _ = load(corpus_path("toy_b.gen"))   # at least 3 of d..h

table = intern([A, B])
MA, MB = build_matrix(A, table), build_matrix(B, table)
full = mpcs(MA, MB, "max")
print(f"state 0: {len(MA)} x {len(MB)} profiles, {full.comparisons} comparisons, "
      f"MPCS_max = {full.value:.4f}")

seg = segment(A, B)
print("shared:", sorted(seg.shared), " fillers A:", sorted(seg.minimize_A),
      " fillers B:", sorted(seg.minimize_B))

# state 1: force the shared symptoms into A's only criterion
forced = force_symptoms(A.criteria[0], seg.forced_A)
print("state 1: A* =", [format_generator(g) for g in forced])

# state 2: keep one smallest filler choice
print("state 2: A** =", [format_generator(g) for g in minimize_fillers(forced, seg.forced_A)])

ra, rb, _ = conditional_pair(A, B)
print("         B** =", [format_generator(g) for g in rb])
print("witness:", sorted(full.witness[0]), sorted(full.witness[1]))
