"""Five generator templates and what they expand to."""

from profilegen import G0, G1, G2, G3, G4, count_generator, eval_generator
from profilegen.generators import canonical_order, powerset, size_filter, union_product


def show(label, g, limit=8):
    fam = canonical_order(eval_generator(g))
    body = ", ".join("{" + ",".join(sorted(p)) + "}" for p in fam[:limit])
    more = f", ... ({len(fam)} in total)" if len(fam) > limit else ""
    print(f"{label:3} {body}{more}")


# the building blocks: powerset, size filter, union product
ps = powerset(frozenset("abc"))
print("ps({a,b,c}) has", len(ps), "members")
print("sf(ps, 2) keeps", len(size_filter(ps, 2)))
print("up:", sorted("".join(sorted(p)) for p in union_product([{frozenset("ab"), frozenset("c")},
                                                              {frozenset("de"), frozenset("f")}])))
print()

show("G0", G0("abcd"))
show("G1", G1("abc", 2))
show("G2", G2(["ab", "cd", "ef"], 2))   # 54 combinations
show("G3", G3(["ab", "c"], ["de", "f"]))
show("G4", G4(["ab", "c"], ["d", "ef"], (1, 0, 3)))   # 33 combinations

# counting never needs enumeration when the sets are disjoint
print()
print("G2 count by formula:", count_generator(G2(["ab", "cd", "ef"], 2)))

# an empty set in the second G3 list lets list-1 sets stand alone
show("G3*", G3(["ab", "c"], ["d", ""]))
