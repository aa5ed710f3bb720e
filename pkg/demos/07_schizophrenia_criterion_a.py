"""One sentence of wording changes the generator, and the profile count."""

from profilegen import corpus_path, count_profiles, load
from profilegen.spec_io import format_generator

for name in ("schizophrenia_a_g2", "schizophrenia_a_g4"):
    d, _ = load(corpus_path(f"{name}.gen"))
    (g,) = d.criteria
    print(f"{g.kind}: {count_profiles(d):3} profiles  {format_generator(g)}")

# the G4 version insists one of the first three items is present
