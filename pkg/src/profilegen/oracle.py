"""Deliberately naive reference implementations.

Nothing here shares code with the fast paths: generators are evaluated by
literally composing powerset / size filter / union products over Python
frozensets, disorders are joined by a plain Cartesian product, and MPCS is an
exhaustive double loop.  No interning, no bit masks.
"""

import math
from itertools import product

from .errors import OracleTooLarge, Unsatisfiable
from .generators import G0, G1, G2, G3, G4

ORACLE_CAP = 2 ** 20
#: Row limit per disorder for :func:`naive_mpcs`.
MPCS_ROW_CAP = 10 ** 5
#: Pair limit for :func:`naive_mpcs` (the double loop is pure Python).
MPCS_PAIR_CAP = 10 ** 7


def _ps(items):
    items = list(items)
    if not items:
        return [frozenset()]
    rest = _ps(items[1:])
    return rest + [r | {items[0]} for r in rest]


def _ps_set(S):
    return frozenset(frozenset(x) for x in _ps(S))


def _sf(C, m):
    return frozenset(x for x in C if len(x) >= m)


def _ps_star(tagged_sets):
    # each collection is tagged so identical sets in different positions stay apart
    return [(tag, _sf(_ps_set(S), 1)) for tag, S in tagged_sets]


def _up(collections):
    out = {frozenset()}
    for coll in collections:
        out = {a | b for a in out for b in coll}
    return frozenset(out)


def _up_star(groups):
    out = set()
    for group in groups:
        out |= _up([coll for _, coll in group])
    return frozenset(out)


def _groups(tagged_colls, m):
    # sf(ps(ps*(...)), m): every sub-list of the collections with at least m members
    return [frozenset(g) for g in _ps(tagged_colls) if len(g) >= m]


def naive_eval(g):
    """Evaluate a generator by composing the set primitives literally."""
    if isinstance(g, G0):
        out = frozenset([frozenset(g.set)])
    elif isinstance(g, G1):
        if len(g.set) > 20:
            raise OracleTooLarge(f"G1 over {len(g.set)} symptoms")
        out = _sf(_ps_set(g.set), g.k)
    elif isinstance(g, G2):
        colls = _ps_star(enumerate(g.sets))
        out = _up_star(_groups(colls, g.k))
    elif isinstance(g, G3):
        out = _up([frozenset(g.list1), frozenset(g.list2)])
    elif isinstance(g, G4):
        r, s, t = g.req
        left = _groups(_ps_star((("L1", i), S) for i, S in enumerate(g.list1)), r)
        right = _groups(_ps_star((("L2", i), S) for i, S in enumerate(g.list2)), s)
        joined = [a | b for a in left for b in right]
        out = _up_star([grp for grp in joined if len(grp) >= t])
    else:
        raise TypeError(f"not a generator: {g!r}")
    if len(out) > ORACLE_CAP:
        raise OracleTooLarge(f"{len(out)} combinations")
    return out


def naive_profiles(spec, row_cap=MPCS_ROW_CAP):
    """All profiles of a disorder as a set of frozensets."""
    # size guard only; the closed-form count is never used for results
    from .generators import count_generator

    estimate = math.prod(count_generator(c) for c in spec.criteria)
    if estimate > row_cap:
        raise OracleTooLarge(f"{spec.name}: about {estimate} raw profiles exceed {row_cap}")
    parts = [naive_eval(c) for c in spec.criteria]
    total = math.prod(len(p) for p in parts)
    if total > row_cap:
        raise OracleTooLarge(f"{spec.name}: {total} raw profiles exceed {row_cap}")
    return frozenset(frozenset().union(*pick) for pick in product(*parts))


def _cos(x, y):
    if not x or not y:
        return 0.0
    return len(x & y) / math.sqrt(len(x) * len(y))


def naive_mpcs(A, B, agg="max", row_cap=MPCS_ROW_CAP):
    """Exhaustive MPCS between two disorder specs, both directions."""
    from .similarity import MpcsResult

    rows_a = sorted(naive_profiles(A, row_cap), key=lambda p: (len(p), sorted(p)))
    rows_b = sorted(naive_profiles(B, row_cap), key=lambda p: (len(p), sorted(p)))
    if len(rows_a) * len(rows_b) > MPCS_PAIR_CAP:
        raise OracleTooLarge(f"{len(rows_a)} x {len(rows_b)} pairs exceed {MPCS_PAIR_CAP}")
    comparisons = 0

    def direction(X, Y):
        nonlocal comparisons
        best_rows = []
        for x in X:
            best, arg = -1.0, None
            for y in Y:
                comparisons += 1
                c = _cos(x, y)
                if c > best:
                    best, arg = c, y
            best_rows.append((best, x, arg))
        return best_rows

    ab = direction(rows_a, rows_b)
    ba = direction(rows_b, rows_a)
    if agg == "max":
        phi_ab = max(b for b, _, _ in ab)
        phi_ba = max(b for b, _, _ in ba)
        best = max(ab, key=lambda t: t[0])
        witness = (best[1], best[2])
    elif agg == "mean":
        phi_ab = sum(b for b, _, _ in ab) / len(ab)
        phi_ba = sum(b for b, _, _ in ba) / len(ba)
        witness = None
    else:
        raise ValueError(f"unknown aggregation {agg!r}")
    return MpcsResult(
        value=max(phi_ab, phi_ba),
        aggregation=agg,
        phi_ab=phi_ab,
        phi_ba=phi_ba,
        comparisons=comparisons,
        witness=witness,
    )


def min_superset_size(g, F):
    """Smallest combination of ``g`` that contains every symptom of ``F``."""
    sizes = [len(p) for p in naive_eval(g) if F <= p]
    if not sizes:
        raise Unsatisfiable(f"no combination of {g.kind} contains {sorted(F)}")
    return min(sizes)


def naive_force(g, F):
    return frozenset(p for p in naive_eval(g) if F <= p)
