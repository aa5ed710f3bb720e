"""Generator data model, set-algebra primitives and exact generator evaluation.

A *generator* describes one diagnostic criterion as a small structured value
(sets of symptom names plus requirement numbers).  Evaluating it yields the
exact family of symptom combinations that satisfy the criterion.

The five primitives ``powerset``, ``size_filter``, ``powerset_extended``,
``union_product`` and ``union_product_extended`` operate on frozensets of
frozensets.  ``eval_generator`` does not compose them; it enumerates bit masks
directly, which keeps it fast and gives the literal compositions in
:mod:`profilegen.oracle` something independent to be checked against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence, Union

from .errors import CapExceeded, InvalidGenerator

SymptomSet = frozenset  # frozenset[str]

#: Largest set accepted by :func:`powerset`.
POWERSET_CAP = 24
#: Largest number of combinations materialized by :func:`eval_generator`.
EVAL_CAP = 2 ** 24


def symptom_set(names: Iterable[str]) -> frozenset:
    """Build a validated symptom set from an iterable of names."""
    out = frozenset(names)
    for name in out:
        if not isinstance(name, str) or not name.strip():
            raise InvalidGenerator(f"invalid symptom name {name!r}", "nonempty name")
    return out


def sort_key(s: frozenset):
    """Graded-lexicographic key: size first, then the sorted names."""
    return (len(s), tuple(sorted(s)))


def canonical_order(family: Iterable[frozenset]) -> list:
    return sorted(family, key=sort_key)


# ---------------------------------------------------------------------------
# primitives


def powerset(S: frozenset, cap: int = POWERSET_CAP) -> frozenset:
    """All ``2**len(S)`` subsets of ``S``, including the empty set."""
    if len(S) > cap:
        raise CapExceeded(f"powerset of {len(S)} elements exceeds cap of {cap}")
    items = sorted(S)
    return frozenset(
        frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)
    )


def size_filter(C: Iterable[frozenset], m: int) -> frozenset:
    return frozenset(R for R in C if len(R) >= m)


def powerset_extended(Ls: Sequence[frozenset], cap: int = POWERSET_CAP) -> list:
    """Nonempty subsets of every input set, in input order."""
    return [size_filter(powerset(R, cap), 1) for R in Ls]


def union_product(Rs: Sequence[Iterable[frozenset]]) -> frozenset:
    """Pick one member of every collection and union the picks, all ways."""
    acc = {frozenset()}
    for R in Rs:
        acc = {a | r for a in acc for r in R}
    return frozenset(acc)


def union_product_extended(groups: Iterable[Sequence[Iterable[frozenset]]]) -> frozenset:
    out = set()
    for group in groups:
        out |= union_product(group)
    return frozenset(out)


def count_at_least(n: int, k: int) -> int:
    """Number of subsets of an ``n``-set with at least ``k`` elements."""
    return sum(math.comb(n, i) for i in range(max(k, 0), n + 1))


# ---------------------------------------------------------------------------
# generator variants


def _set_tuple(sets, what, allow_empty=False):
    out = tuple(symptom_set(s) for s in sets)
    for s in out:
        if not s and not allow_empty:
            raise InvalidGenerator(f"{what}: sets must be nonempty", "nonempty sets")
    return out


@dataclass(frozen=True)
class G0:
    """Identity generator: exactly the given set."""

    set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "set", symptom_set(self.set))
        if not self.set:
            raise InvalidGenerator("G0: set must be nonempty", "nonempty sets")

    kind = "G0"


@dataclass(frozen=True)
class G1:
    """Every subset of ``set`` with at least ``k`` elements."""

    set: frozenset
    k: int

    def __post_init__(self):
        object.__setattr__(self, "set", symptom_set(self.set))
        if not 0 <= self.k <= len(self.set):
            raise InvalidGenerator(
                f"G1: k={self.k} must satisfy 0 <= k <= |S| = {len(self.set)}",
                "0 <= k <= |S|",
            )

    kind = "G1"


@dataclass(frozen=True)
class G2:
    """Unions of nonempty picks from at least ``k`` of the sets."""

    sets: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "sets", _set_tuple(self.sets, "G2"))
        if len(self.sets) < 2:
            # one set would read exactly like G1 [S, k], which it equals
            raise InvalidGenerator("G2: needs at least two sets; use G1 for one", "m >= 2")
        if not 0 <= self.k <= len(self.sets):
            raise InvalidGenerator(
                f"G2: k={self.k} must satisfy k <= m = {len(self.sets)}", "k <= m"
            )

    kind = "G2"


@dataclass(frozen=True)
class G3:
    """Pair every set of ``list1`` with every set of ``list2``.

    ``list2`` may contain the empty set, which yields ``list1`` members alone.
    """

    list1: tuple
    list2: tuple

    def __post_init__(self):
        object.__setattr__(self, "list1", _set_tuple(self.list1, "G3 list1"))
        object.__setattr__(
            self, "list2", _set_tuple(self.list2, "G3 list2", allow_empty=True)
        )
        if not self.list1 or not self.list2:
            raise InvalidGenerator("G3: both lists must be nonempty", "nonempty lists")

    kind = "G3"


@dataclass(frozen=True)
class G4:
    """Two-list threshold generator with requirement triple ``(r, s, t)``.

    At least ``r`` sets of ``list1`` and ``s`` sets of ``list2`` must be
    touched, and at least ``t`` sets overall.
    """

    list1: tuple
    list2: tuple
    req: tuple

    def __post_init__(self):
        object.__setattr__(self, "list1", _set_tuple(self.list1, "G4 list1"))
        object.__setattr__(self, "list2", _set_tuple(self.list2, "G4 list2"))
        req = tuple(int(x) for x in self.req)
        object.__setattr__(self, "req", req)
        if len(req) != 3 or min(req) < 0:
            raise InvalidGenerator("G4: req must be three counts >= 0", "(r,s,t) >= 0")
        if not self.list1 or not self.list2:
            raise InvalidGenerator("G4: both lists must be nonempty", "nonempty lists")
        r, s, t = req
        n1, n2 = len(self.list1), len(self.list2)
        if r > n1:
            raise InvalidGenerator(f"G4: r={r} > n1={n1}", "r <= n1")
        if s > n2:
            raise InvalidGenerator(f"G4: s={s} > n2={n2}", "s <= n2")
        if t > n1 + n2:
            raise InvalidGenerator(f"G4: t={t} > n1+n2={n1 + n2}", "t <= n1 + n2")

    kind = "G4"


Generator = Union[G0, G1, G2, G3, G4]


def all_sets(g: Generator) -> tuple:
    """Every literal set occurring in ``g``."""
    if isinstance(g, (G0, G1)):
        return (g.set,)
    if isinstance(g, G2):
        return g.sets
    return g.list1 + g.list2


def generator_domain(g: Generator) -> frozenset:
    return frozenset().union(*all_sets(g))


def has_overlapping_sets(g: Generator) -> bool:
    """True when some symptom occurs in two different sets of ``g``."""
    sets = [s for s in all_sets(g) if s]
    return sum(len(s) for s in sets) != len(frozenset().union(*sets))


# ---------------------------------------------------------------------------
# counting


def _touch_poly(sets) -> list:
    """Coefficients of prod(1 + (2**|S| - 1) x): selections by touched-set count."""
    coeffs = [1]
    for s in sets:
        w = 2 ** len(s) - 1
        nxt = coeffs + [0]
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c * w
        coeffs = nxt
    return coeffs


def selection_count(g: Generator) -> int:
    """Number of selection tuples before duplicate collapse.

    Equals the number of distinct combinations whenever the sets of ``g`` are
    pairwise disjoint (and, for G3, the pairwise unions are distinct).
    """
    if isinstance(g, G0):
        return 1
    if isinstance(g, G1):
        return count_at_least(len(g.set), g.k)
    if isinstance(g, G2):
        return sum(_touch_poly(g.sets)[g.k:])
    if isinstance(g, G3):
        return len(g.list1) * len(g.list2)
    r, s, t = g.req
    p1, p2 = _touch_poly(g.list1), _touch_poly(g.list2)
    return sum(
        c1 * c2
        for i, c1 in enumerate(p1)
        if i >= r
        for j, c2 in enumerate(p2)
        if j >= s and i + j >= t
    )


def count_generator(g: Generator, cap: int = EVAL_CAP) -> int:
    """Exact number of distinct combinations produced by ``g``."""
    if isinstance(g, G3) or has_overlapping_sets(g):
        return len(eval_generator(g, cap))
    return selection_count(g)


# ---------------------------------------------------------------------------
# evaluation over bit masks


def _nonempty_submasks(mask: int) -> list:
    out = []
    sub = mask
    while sub:
        out.append(sub)
        sub = (sub - 1) & mask
    return out


def _mask(names, bit) -> int:
    m = 0
    for name in names:
        m |= bit[name]
    return m


def _touch_masks(subs, lo):
    """Yield (touched count, OR-mask) for every pick touching >= ``lo`` sets."""
    n = len(subs)
    for size in range(lo, n + 1):
        for chosen in combinations(range(n), size):
            for picks in product(*(subs[i] for i in chosen)):
                m = 0
                for p in picks:
                    m |= p
                yield size, m


def eval_masks(g: Generator, bit: dict, cap: int = EVAL_CAP) -> set:
    """Evaluate ``g`` to a set of integer masks using ``bit[name]`` per symptom."""
    work = selection_count(g)
    if work > cap:
        raise CapExceeded(
            f"{g.kind} would enumerate {work} combinations, above the cap of {cap}; "
            "use the streaming engine or raise the cap"
        )
    if isinstance(g, G0):
        return {_mask(g.set, bit)}
    if isinstance(g, G1):
        bits = [bit[n] for n in g.set]
        out = set()
        for size in range(g.k, len(bits) + 1):
            for c in combinations(bits, size):
                m = 0
                for b in c:
                    m |= b
                out.add(m)
        return out
    if isinstance(g, G2):
        subs = [_nonempty_submasks(_mask(s, bit)) for s in g.sets]
        return {m for _, m in _touch_masks(subs, g.k)}
    if isinstance(g, G3):
        m1 = [_mask(s, bit) for s in g.list1]
        m2 = [_mask(s, bit) for s in g.list2]
        return {a | b for a in m1 for b in m2}
    r, s, t = g.req
    subs1 = [_nonempty_submasks(_mask(x, bit)) for x in g.list1]
    subs2 = [_nonempty_submasks(_mask(x, bit)) for x in g.list2]
    right = list(_touch_masks(subs2, s))
    out = set()
    for i, a in _touch_masks(subs1, r):
        for j, b in right:
            if i + j >= t:
                out.add(a | b)
    return out


def _local_bits(g: Generator):
    names = sorted(generator_domain(g))
    return names, {n: 1 << i for i, n in enumerate(names)}


def _unmask(m: int, names) -> frozenset:
    return frozenset(n for i, n in enumerate(names) if m >> i & 1)


def eval_generator(g: Generator, cap: int = EVAL_CAP) -> frozenset:
    """Exact, duplicate-free family of combinations produced by ``g``."""
    names, bit = _local_bits(g)
    return frozenset(_unmask(m, names) for m in eval_masks(g, bit, cap))


def eval_sorted(g: Generator, cap: int = EVAL_CAP) -> list:
    """:func:`eval_generator` in graded-lexicographic order."""
    return canonical_order(eval_generator(g, cap))


def necessary_symptoms(g: Generator, cap: int = EVAL_CAP) -> frozenset:
    """Symptoms present in every combination of ``g``."""
    names, bit = _local_bits(g)
    acc = (1 << len(names)) - 1
    for m in eval_masks(g, bit, cap):
        acc &= m
    return _unmask(acc, names)


def check_degenerate(g: Generator) -> list:
    """Warnings for legal but suspicious generators."""
    out = []
    if isinstance(g, G1) and g.k == 0:
        out.append("G1 with k=0 accepts the empty combination")
    if isinstance(g, G2) and g.k == 0:
        out.append("G2 with k=0 accepts the empty combination")
    if isinstance(g, G4) and g.req == (0, 0, 0):
        out.append("G4 with (0,0,0) accepts the empty combination")
    if has_overlapping_sets(g):
        out.append(f"{g.kind} has a symptom in more than one set; duplicates collapse")
    return out


def warn_degenerate(g: Generator) -> None:
    for msg in check_degenerate(g):
        warnings.warn(msg, stacklevel=2)


# ---------------------------------------------------------------------------
# disorders


@dataclass(frozen=True)
class DisorderSpec:
    """A named disorder: one generator per diagnostic criterion.

    ``labels`` holds optional criterion labels ("A", "B", ...).
    ``symptom_order`` records the order in which symptoms were first written
    in the source file; it only steers column order when interning and is
    ignored by equality.
    """

    name: str
    criteria: tuple
    labels: tuple = ()
    symptom_order: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if not self.criteria:
            raise InvalidGenerator(f"{self.name}: a disorder needs at least one criterion",
                                   "at least one criterion")
        labels = tuple(self.labels) or (None,) * len(self.criteria)
        if len(labels) != len(self.criteria):
            raise ValueError("labels must match criteria in length")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "symptom_order", tuple(self.symptom_order))

    @property
    def domains(self) -> list:
        return [generator_domain(g) for g in self.criteria]

    @property
    def domain(self) -> frozenset:
        return frozenset().union(*self.domains)

    @property
    def disjoint_criteria(self) -> bool:
        doms = self.domains
        return sum(len(d) for d in doms) == len(frozenset().union(*doms))

    def ordered_symptoms(self) -> list:
        """Symptoms in first-written order, falling back to sorted-per-set."""
        seen = dict.fromkeys(n for n in self.symptom_order if n in self.domain)
        for g in self.criteria:
            for s in all_sets(g):
                seen.update(dict.fromkeys(sorted(s)))
        return list(seen)
