"""Maximum profile versus all profiles, on the flu / cold demo."""

import io

from profilegen import build_matrix, corpus_path, intern, load, max_profile
from profilegen.engine import export_matrix
from profilegen.similarity import mpcs, mpcs_mp

flu, _ = load(corpus_path("flu.gen"))
cold, _ = load(corpus_path("cold.gen"))
table = intern([flu, cold])   # one shared column order for both disorders

print("columns:", ", ".join(table.names))
print()
print("MP  flu :", max_profile(flu, table).bits())
print("MP  cold:", max_profile(cold, table).bits())

for d in (flu, cold):
    buf = io.StringIO()
    n = export_matrix(d, table, buf)
    print(f"\nAP {d.name} ({n} rows)")
    print(buf.getvalue().split("\n", 1)[1], end="")

# the MP view overstates how different the two disorders look
mp_sim = mpcs_mp(max_profile(flu, table), max_profile(cold, table))
ap_sim = mpcs(build_matrix(flu, table), build_matrix(cold, table), "max").value
print(f"\nMP cosine   {mp_sim:.4f}")
print(f"MPCS_max AP {ap_sim:.4f}")
