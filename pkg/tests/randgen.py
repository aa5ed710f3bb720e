"""Seeded random generators and disorders for the property suites."""

import random

from profilegen.generators import G0, G1, G2, G3, G4, DisorderSpec

SYMBOLS = "abcdefghijkl"


def _subset(rng, pool, lo, hi):
    n = rng.randint(lo, min(hi, len(pool)))
    return frozenset(rng.sample(pool, n))


def _sets(rng, pool, count, overlap):
    """``count`` nonempty sets, disjoint unless ``overlap``."""
    pool = list(pool)
    out = []
    for _ in range(count):
        if overlap and out and rng.random() < 0.5:
            src = list(rng.choice(out)) + rng.sample(pool, min(1, len(pool)))
            out.append(frozenset(rng.sample(src, rng.randint(1, len(src)))))
            continue
        if not pool:
            break
        s = _subset(rng, pool, 1, 3)
        pool = [x for x in pool if x not in s]
        out.append(s)
    return out


def random_generator(rng, pool=SYMBOLS, kinds="01234", overlap=None):
    pool = list(pool)
    kind = rng.choice(kinds)
    if overlap is None:
        overlap = rng.random() < 0.2
    if kind == "0":
        return G0(_subset(rng, pool, 1, 5))
    if kind == "1":
        S = _subset(rng, pool, 1, 8)
        return G1(S, rng.randint(0, len(S)))
    if kind == "2":
        sets = _sets(rng, pool, rng.randint(2, 5), overlap)
        if len(sets) < 2:
            return G1(sets[0], rng.randint(0, len(sets[0])))
        return G2(sets, rng.randint(0, len(sets)))
    if kind == "3":
        sets = _sets(rng, pool, rng.randint(2, 5), overlap)
        cut = rng.randint(1, len(sets) - 1) if len(sets) > 1 else 1
        l1, l2 = sets[:cut], sets[cut:] or [frozenset()]
        if rng.random() < 0.3:
            l2 = list(l2) + [frozenset()]
        return G3(l1, l2)
    sets = _sets(rng, pool, rng.randint(2, 6), overlap)
    if len(sets) < 2:
        return G1(sets[0], 1)
    cut = rng.randint(1, len(sets) - 1)
    l1, l2 = sets[:cut], sets[cut:]
    r, s = rng.randint(0, len(l1)), rng.randint(0, len(l2))
    t = rng.randint(0, len(l1) + len(l2))
    return G4(l1, l2, (r, s, t))


def _no_empty_profile(g):
    """Reject generators whose only minimal combination is the empty set."""
    if isinstance(g, G1):
        return g.k > 0
    if isinstance(g, G2):
        return g.k > 0
    if isinstance(g, G4):
        return any(g.req)
    return True


def random_disorder(rng, name, pool, n_criteria, kinds, allow_empty=False):
    pool = list(pool)
    rng.shuffle(pool)
    chunks = [pool[i::n_criteria] for i in range(n_criteria)]
    crits = []
    for chunk in chunks:
        if not chunk:
            continue
        while True:
            g = random_generator(rng, chunk, kinds, overlap=False)
            if allow_empty or _no_empty_profile(g):
                break
        crits.append(g)
    return DisorderSpec(name, tuple(crits))


def random_pair(rng, with_g3=False, total=16):
    """Two disorders over at most ``total`` symbols with a random overlap."""
    symbols = list("abcdefghijklmnop")[:total]
    rng.shuffle(symbols)
    n_shared = rng.randint(0, 5)
    n_a = rng.randint(2, 6)
    n_b = rng.randint(2, 6)
    shared = symbols[:n_shared]
    only_a = symbols[n_shared:n_shared + n_a]
    only_b = symbols[n_shared + n_a:n_shared + n_a + n_b]
    kinds = "01234" if with_g3 else "0124"
    A = random_disorder(rng, "A", shared + only_a, rng.randint(1, 3), kinds)
    B = random_disorder(rng, "B", shared + only_b, rng.randint(1, 3), kinds)
    if with_g3 and not any(isinstance(g, G3) for g in A.criteria + B.criteria):
        return random_pair(rng, with_g3, total)
    return A, B


def make_rng(seed):
    return random.Random(seed)
