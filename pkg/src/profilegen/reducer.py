"""Conditional generators: shrinking two disorders to their most similar profiles.

For MPCS with max aggregation only the single most similar profile pair
matters.  Symptoms are split into three groups:

* *shared*: in both domains and in no G3 generator.  Every optimal pair
  contains all of them, so they are forced into both disorders.
* *minimize*: in one domain only (and in no G3 generator).  They never add to
  the overlap, only to the profile size, so a minimal filler is kept.
* *untouched*: in some G3 generator of either disorder.  These keep all their
  options.

Forcing is sound because every non-G3 generator is upward closed within its
own domain: adding a domain symptom to a valid combination keeps it valid, and
adding a shared symptom to both sides never lowers the cosine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .engine import ProfileMatrix, build_matrix, count_profiles, intern
from .errors import (
    G3NotReducible,
    OracleTooLarge,
    OverlappingCriteria,
    ProfileGenError,
    Unsatisfiable,
)
from .generators import (
    G0,
    G1,
    G2,
    G3,
    G4,
    DisorderSpec,
    canonical_order,
    eval_generator,
    generator_domain,
    has_overlapping_sets,
    necessary_symptoms,
    sort_key,
    union_product,
)
from .similarity import MpcsResult, comparison_count, mpcs

EMPTY = frozenset()


@dataclass(frozen=True)
class Segmentation:
    shared: frozenset
    minimize_A: frozenset
    minimize_B: frozenset
    untouched: frozenset
    necessary_A: frozenset
    necessary_B: frozenset
    forced_A: frozenset
    forced_B: frozenset


def _g3_domain(d: DisorderSpec) -> frozenset:
    return EMPTY.union(*(generator_domain(g) for g in d.criteria if isinstance(g, G3)))


def _necessary(d: DisorderSpec) -> frozenset:
    return EMPTY.union(*(necessary_symptoms(g) for g in d.criteria))


def _require_disjoint(d: DisorderSpec):
    if not d.disjoint_criteria:
        raise OverlappingCriteria(
            f"{d.name}: conditional generators need criteria with disjoint symptoms"
        )


def segment(A: DisorderSpec, B: DisorderSpec) -> Segmentation:
    _require_disjoint(A)
    _require_disjoint(B)
    dom_a, dom_b = A.domain, B.domain
    untouched = _g3_domain(A) | _g3_domain(B)
    shared = (dom_a & dom_b) - untouched
    nec_a, nec_b = _necessary(A), _necessary(B)
    return Segmentation(
        shared=shared,
        minimize_A=dom_a - dom_b - untouched,
        minimize_B=dom_b - dom_a - untouched,
        untouched=untouched,
        necessary_A=nec_a,
        necessary_B=nec_b,
        forced_A=shared | nec_a,
        forced_B=shared | nec_b,
    )


# ---------------------------------------------------------------------------
# maximization


def _explicit(family):
    """Generators evaluating to exactly ``family`` (all members nonempty)."""
    family = canonical_order(family)
    if len(family) == 1:
        return [G0(family[0])]
    return [G3(family, [EMPTY])]


def _touch(sets, k):
    """Touch at least ``k`` of ``sets``; a single set is the G1 equivalent."""
    if len(sets) == 1:
        return G1(sets[0], k)
    return G2(sets, k)


def _residual(list1, list2, r, s, t):
    """Generator for the unforced sets of a G4 after forcing (None if free)."""
    if r == s == t == 0:
        return None
    if not list2:
        return _touch(list1, max(r, t))
    if not list1:
        return _touch(list2, max(s, t))
    return G4(list1, list2, (r, s, t))


def force_symptoms(g, F: frozenset) -> list:
    """Rewrite ``g`` so it yields exactly its combinations that contain ``F``.

    The returned generators have pairwise-disjoint domains; their union
    product is ``{p in eval(g) : F <= p}``.
    """
    F = frozenset(F)
    if isinstance(g, G3):
        raise G3NotReducible("G3 criteria are passed through unchanged")
    if not F <= generator_domain(g):
        raise Unsatisfiable(f"{sorted(F - generator_domain(g))} not in the {g.kind} domain")
    if not F or isinstance(g, G0):
        return [g]
    if has_overlapping_sets(g):
        return _explicit(p for p in eval_generator(g) if F <= p)
    out = [G0(F)]
    if isinstance(g, G1):
        rest = g.set - F
        if rest:
            out.append(G1(rest, max(0, g.k - len(F))))
        return out

    optional = set()

    def split(sets):
        hosts = [S for S in sets if S & F]
        for S in hosts:
            optional.update(S - F)
        return len(hosts), [S for S in sets if not S & F]

    if isinstance(g, G2):
        h, free = split(g.sets)
        k = max(0, g.k - h)
        residual = _touch(free, k) if free and k else None
        if free and not k:
            optional.update(*free)
    else:
        r, s, t = g.req
        h1, free1 = split(g.list1)
        h2, free2 = split(g.list2)
        r, s, t = max(0, r - h1), max(0, s - h2), max(0, t - h1 - h2)
        residual = _residual(free1, free2, r, s, t)
        if residual is None:
            optional.update(*free1, *free2)
    if optional:
        out.append(G1(optional, 0))
    if residual is not None:
        out.append(residual)
    return out


# ---------------------------------------------------------------------------
# minimization


def _smallest_sets(sets, n):
    """The ``n`` sets with the smallest minimum name, each reduced to that name."""
    picks = sorted(min(S) for S in sets)[:n]
    return set(picks)


def _minimal_pick(g) -> frozenset:
    """Graded-lexicographically first combination of minimum size."""
    if isinstance(g, G0):
        return g.set
    if isinstance(g, G1):
        return frozenset(sorted(g.set)[: g.k])
    if isinstance(g, G3) or has_overlapping_sets(g):
        return canonical_order(eval_generator(g))[0]
    if isinstance(g, G2):
        return frozenset(_smallest_sets(g.sets, g.k))
    r, s, t = g.req
    first = sorted(min(S) for S in g.list1)
    second = sorted(min(S) for S in g.list2)
    chosen = first[:r] + second[:s]
    pool = sorted(first[r:] + second[s:])
    return frozenset(chosen + pool[: max(0, t - r - s)])


def _disjoint_domains(gs) -> bool:
    doms = [generator_domain(g) for g in gs]
    return sum(len(d) for d in doms) == len(EMPTY.union(*doms))


def minimal_representative(gs) -> frozenset:
    """Smallest joint combination of ``gs``, ties broken graded-lexicographically."""
    if _disjoint_domains(gs):
        return EMPTY.union(*(_minimal_pick(g) for g in gs))
    family = union_product([eval_generator(g) for g in gs])
    return min(family, key=sort_key)


def minimize_fillers(gs, keep: frozenset = EMPTY) -> list:
    """Collapse a forced generator list to one minimal representative profile.

    The result is ``[G0(p)]`` where ``p`` is the graded-lexicographically first
    smallest combination of ``gs``; every symptom in ``keep`` must survive.
    """
    rep = minimal_representative(gs)
    if not frozenset(keep) <= rep:
        raise Unsatisfiable(f"minimal representative drops {sorted(frozenset(keep) - rep)}")
    return [G0(rep)] if rep else []


# ---------------------------------------------------------------------------
# the conditional pair


def _reduce_criterion(g, forced, untouched):
    if isinstance(g, G3):
        return g
    dom = generator_domain(g)
    F = forced & dom
    U = untouched & dom
    if not U:
        reduced = minimize_fillers(force_symptoms(g, F), F)
        if not reduced:
            raise ProfileGenError(f"{g.kind} reduces to the empty combination")
        return reduced[0]
    # keep one minimal representative per pattern of untouched symptoms
    best = {}
    for p in eval_generator(g):
        if not F <= p:
            continue
        key = p & U
        if key not in best or sort_key(p) < sort_key(best[key]):
            best[key] = p
    reps = list(best.values())
    if EMPTY in reps:
        raise ProfileGenError(f"{g.kind} reduces to the empty combination")
    return _explicit(reps)[0]


def conditional_pair(A: DisorderSpec, B: DisorderSpec):
    """Reduced generator lists ``(A**, B**)`` and the segmentation behind them."""
    seg = segment(A, B)
    red_a = [_reduce_criterion(g, seg.forced_A, seg.untouched) for g in A.criteria]
    red_b = [_reduce_criterion(g, seg.forced_B, seg.untouched) for g in B.criteria]
    return red_a, red_b, seg


@dataclass(frozen=True)
class ReductionReport:
    segmentation: Segmentation
    reduced_A: DisorderSpec
    reduced_B: DisorderSpec
    matrix_A: ProfileMatrix
    matrix_B: ProfileMatrix
    result: MpcsResult
    comparisons_before: Optional[int]
    comparisons_after: int
    verified: Optional[bool] = None

    @property
    def value(self) -> float:
        return self.result.value


def _count(d, published):
    if published and d.name in published:
        return int(published[d.name])
    try:
        return count_profiles(d)
    except OverlappingCriteria:
        return None


def mpcs_max_conditional(
    A: DisorderSpec,
    B: DisorderSpec,
    *,
    published_counts: Optional[dict] = None,
    verify: bool = False,
    threads: int = 1,
) -> ReductionReport:
    """MPCS (max aggregation) computed from the reduced matrices only.

    ``published_counts`` maps disorder names to externally known profile
    counts, used for ``comparisons_before`` when a count cannot be derived.
    With ``verify=True`` the value is re-checked against the exhaustive
    oracle when both disorders are small enough.
    """
    red_a, red_b, seg = conditional_pair(A, B)
    spec_a = DisorderSpec(A.name + "_reduced", tuple(red_a), A.labels)
    spec_b = DisorderSpec(B.name + "_reduced", tuple(red_b), B.labels)
    table = intern([A, B])
    ma = build_matrix(spec_a, table, reduced=True)
    mb = build_matrix(spec_b, table, reduced=True)
    result = mpcs(ma, mb, "max", threads=threads)

    ca, cb = _count(A, published_counts), _count(B, published_counts)
    before = comparison_count(ca, cb) if ca is not None and cb is not None else None

    verified = None
    if verify:
        from .oracle import naive_mpcs

        try:
            ref = naive_mpcs(A, B, "max")
            verified = math.isclose(ref.value, result.value, rel_tol=0, abs_tol=1e-12)
        except OracleTooLarge:
            verified = None
    return ReductionReport(
        segmentation=seg,
        reduced_A=spec_a,
        reduced_B=spec_b,
        matrix_A=ma,
        matrix_B=mb,
        result=result,
        comparisons_before=before,
        comparisons_after=len(ma) * len(mb),
        verified=verified,
    )
