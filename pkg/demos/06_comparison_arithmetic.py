"""How many cosine evaluations a brute-force MPCS would need."""

from profilegen import corpus_path, count_profiles, load
from profilegen.similarity import comparison_count

# MDD and Panic are only known by their published counts
counts = {"MDD": 1_376_583_579, "Panic": 3_119_485_608}
for name in ("pdd", "gad"):
    d, _ = load(corpus_path(f"{name}.gen"))
    counts[d.name] = count_profiles(d)

names = ["MDD", "PDD", "GAD", "Panic"]
print(" " * 6 + "".join(f"{n:>12}" for n in names))
for i, a in enumerate(names):
    cells = []
    for j, b in enumerate(names):
        cells.append(f"{comparison_count(counts[a], counts[b]):>12.2e}" if j > i else " " * 12)
    print(f"{a:6}" + "".join(cells))
