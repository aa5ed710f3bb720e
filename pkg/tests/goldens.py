"""Reference values transcribed from the published worked examples."""


def _sets(text):
    return [frozenset(s.split()) for s in text.split("|")]


# G2 = [{a,b}, {c,d}, {e,f}, 2], listed in the published order
LISTING_G2 = _sets(
    "a e|d e|b e|c e|a d|a f|a c|d f|b d|b f|c f|b c|"
    "a d e|a e f|a b e|a c e|d e f|b d e|c d e|b e f|c e f|b c e|"
    "a d f|a b d|a c d|a b f|a c f|a b c|b d f|c d f|b c d|b c f|"
    "a d e f|a b d e|a c d e|a b e f|a c e f|a b c e|b d e f|c d e f|"
    "b c d e|b c e f|a b d f|a c d f|a b c d|a b c f|b c d f|"
    "a b d e f|a c d e f|a b c d e|a b c e f|b c d e f|a b c d f|a b c d e f"
)

# G4 = [[{a,b}, {c}], [{d}, {e,f}], (1,0,3)]
LISTING_G4 = _sets(
    "c d e|c d f|b d e|b d f|a d e|a d f|b c e|b c d|b c f|a c e|a c d|a c f|"
    "c d e f|b d e f|a d e f|b c d e|b c e f|b c d f|a c d e|a c e f|"
    "a c d f|a b d e|a b d f|a b c e|a b c d|a b c f|"
    "a c d e f|a b d e f|b c d e f|a b c d e|a b c e f|a b c d f|a b c d e f"
)

EXAMPLE_G2 = "[{a,b}, {c,d}, {e,f}, 2]"
EXAMPLE_G4 = "[[{a,b}, {c}], [{d}, {e,f}], (1,0,3)]"
EXAMPLE_G3 = "[[{a,b}, {c}], [{d,e}, {f}]]"
EXAMPLE_G3_RESULT = _sets("a b d e|a b f|c d e|c f")
EXAMPLE_G1 = "[{a,b,c}, 2]"
EXAMPLE_G1_RESULT = _sets("a b|a c|b c|a b c")

# columns and rows of the flu / cold demo
COLUMNS = ["Cough", "Runny_Nose", "Hoarse", "Headache", "Fatigue", "Fever", "Chills", "Nausea"]
MP_FLU = [1, 1, 1, 1, 1, 1, 1, 1]
MP_COLD = [1, 1, 1, 1, 1, 0, 0, 0]
AP_FLU = [
    [1, 1, 1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1, 0, 1],
    [1, 1, 1, 1, 1, 0, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1],
]
AP_COLD = [
    [1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 1, 0, 1, 0, 0, 0],
    [1, 1, 1, 1, 1, 0, 0, 0],
]

PUBLISHED_COUNTS = {"PDD": 63567, "GAD": 27090, "SSD": 7}
MDD_COUNT = 1_376_583_579
PANIC_COUNT = 3_119_485_608
# large comparison counts: (row, column, approximate product)
COMPARISON_PRODUCTS = [
    ("MDD", "PDD", 8.75e13),
    ("MDD", "GAD", 3.73e13),
    ("MDD", "Panic", 4.29e18),
    ("PDD", "Panic", 1.98e14),
    ("GAD", "Panic", 8.45e13),
]
PDD_GAD_MPCS_MAX = 0.519
PDD_GAD_COMPARISONS = 1_722_030_030
