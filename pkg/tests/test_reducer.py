import math

import pytest

from randgen import make_rng, random_generator, random_pair
from profilegen.engine import build_matrix, intern, satisfies
from profilegen.errors import G3NotReducible, OverlappingCriteria, Unsatisfiable
from profilegen.generators import G0, G1, G2, G3, G4, DisorderSpec, generator_domain, union_product
from profilegen.oracle import min_superset_size, naive_eval, naive_force
from profilegen.reducer import (
    conditional_pair,
    force_symptoms,
    minimal_representative,
    minimize_fillers,
    mpcs_max_conditional,
    segment,
)
from profilegen.similarity import cosine_from_counts, mpcs

fs = frozenset


def joint(gs):
    return union_product([naive_eval(g) for g in gs])


def brute_max(A, B):
    table = intern([A, B])
    return mpcs(build_matrix(A, table), build_matrix(B, table), "max").value


class TestToy:
    def test_segmentation(self, corpus):
        seg = segment(corpus("toy_a"), corpus("toy_b"))
        assert seg.shared == fs("de")
        assert seg.minimize_A == fs("abc") and seg.minimize_B == fs("fgh")
        assert seg.untouched == fs()
        assert seg.forced_A == seg.shared | seg.necessary_A

    def test_state1_force(self):
        assert force_symptoms(G1("abcde", 3), fs("de")) == [G0("de"), G1("abc", 1)]

    def test_state2_minimize(self):
        assert minimize_fillers([G0("de"), G1("abc", 1)], fs("de")) == [G0("ade")]

    def test_pair(self, corpus):
        ra, rb, _ = conditional_pair(corpus("toy_a"), corpus("toy_b"))
        assert ra == [G0("ade")] and rb == [G0("def")]

    def test_report(self, corpus):
        r = mpcs_max_conditional(corpus("toy_a"), corpus("toy_b"), verify=True)
        assert r.value == 2 / 3
        assert r.comparisons_before == 256 and r.comparisons_after == 1
        assert r.verified is True


class TestCorpusPairs:
    def test_flu_cold(self, corpus):
        flu, cold = corpus("flu"), corpus("cold")
        ra, rb, _ = conditional_pair(flu, cold)
        assert [len(g.set) for g in ra] == [5, 2] and sum(len(g.set) for g in rb) == 5
        r = mpcs_max_conditional(flu, cold)
        assert r.value == pytest.approx(5 / math.sqrt(35), abs=1e-15)
        assert r.value == brute_max(flu, cold)

    def test_identical(self, corpus):
        gad = corpus("gad")
        ra, rb, seg = conditional_pair(gad, gad)
        assert seg.shared == gad.domain and not seg.minimize_A and not seg.minimize_B
        assert ra == rb
        assert mpcs_max_conditional(gad, gad).value == 1.0

    def test_disjoint(self, corpus):
        seg = segment(corpus("flu"), corpus("toy_a"))
        assert seg.shared == fs()
        assert mpcs_max_conditional(corpus("flu"), corpus("toy_a")).value == 0.0

    def test_pdd_gad(self, corpus):
        pdd, gad = corpus("pdd"), corpus("gad")
        r = mpcs_max_conditional(pdd, gad)
        assert r.value == cosine_from_counts(11, 18, 25) == 11 / math.sqrt(450)
        assert round(r.value, 3) == 0.519
        assert r.comparisons_before == 1_722_030_030 and r.comparisons_after == 1
        wa, wb = r.result.witness
        assert satisfies(wa, pdd) and satisfies(wb, gad)

    def test_published_counts(self, corpus):
        r = mpcs_max_conditional(
            corpus("toy_a"), corpus("toy_b"), published_counts={"toy_A": 10, "toy_B": 3}
        )
        assert r.comparisons_before == 30


class TestErrors:
    def test_g3_not_reducible(self):
        with pytest.raises(G3NotReducible):
            force_symptoms(G3(["a"], ["b"]), fs("a"))

    def test_unsatisfiable(self):
        with pytest.raises(Unsatisfiable):
            force_symptoms(G1("abc", 1), fs("z"))
        with pytest.raises(Unsatisfiable):
            minimize_fillers([G1("abc", 1)], fs("c"))

    def test_overlapping_criteria(self):
        X = DisorderSpec("X", (G1("ab", 1), G1("bc", 1)))
        with pytest.raises(OverlappingCriteria):
            segment(X, X)

    def test_unforced_is_unchanged(self):
        g = G2(["ab", "c"], 1)
        assert force_symptoms(g, fs()) == [g]
        assert force_symptoms(G0("abc"), fs("ab")) == [G0("abc")]


class TestMinimize:
    def test_g2_residual(self):
        assert minimize_fillers([G2(["xy", "z"], 2)]) == [G0("xz")]

    def test_all_forced(self):
        assert minimize_fillers([G0("ab"), G0("c")], fs("abc")) == [G0("abc")]

    def test_g4(self):
        g = G4(["bc", "a"], ["ef", "d"], (1, 1, 3))
        best = min(naive_eval(g), key=lambda p: (len(p), sorted(p)))
        assert minimal_representative([g]) == best

    def test_g2_example(self):
        got = joint(force_symptoms(G2(["ab", "c"], 2), fs("c")))
        assert got == naive_force(G2(["ab", "c"], 2), fs("c"))


def test_force_exact_randomized():
    rng = make_rng(5150)
    checked = 0
    while checked < 10_000:
        g = random_generator(rng, kinds="0124")
        dom = sorted(generator_domain(g))
        F = fs(x for x in dom if rng.random() < 0.35)
        expected = naive_force(g, F)
        out = force_symptoms(g, F)
        doms = [generator_domain(h) for h in out]
        assert sum(map(len, doms)) == len(fs().union(*doms))
        assert joint(out) == expected, (g, F, out)
        if expected:
            rep = minimize_fillers(out, F)
            size = len(rep[0].set) if rep else 0
            assert size == min_superset_size(g, F)
            # monotone safety: forcing never needs more non-forced symptoms
            unforced = min(len(p - F) for p in naive_eval(g))
            assert size - len(F) == unforced
        checked += 1


def _soundness(seed, n, with_g3):
    rng = make_rng(seed)
    for _ in range(n):
        A, B = random_pair(rng, with_g3)
        r = mpcs_max_conditional(A, B)
        assert abs(r.value - brute_max(A, B)) <= 1e-12, (A, B)
        wa, wb = r.result.witness
        assert satisfies(wa, A) and satisfies(wb, B)
        if not with_g3:
            assert r.comparisons_after == 1


def test_soundness_without_g3():
    _soundness(3, 1000, False)


def test_soundness_with_g3():
    _soundness(7, 200, True)


def test_representative_independence():
    """Every minimal filler choice gives the same MPCS_max value."""
    rng = make_rng(77)
    for _ in range(150):
        A, B = random_pair(rng, False, total=10)
        ra, rb, seg = conditional_pair(A, B)
        value = mpcs_max_conditional(A, B).value
        alts = []
        for spec, red, forced in [(A, ra, seg.forced_A), (B, rb, seg.forced_B)]:
            choices = []
            for g, h in zip(spec.criteria, red):
                fam = naive_force(g, forced & generator_domain(g))
                size = len(h.set)
                choices.append([p for p in fam if len(p) == size])
            alts.append(choices)
        for pick_a in _sample_products(rng, alts[0]):
            for pick_b in _sample_products(rng, alts[1]):
                a = fs().union(*pick_a)
                b = fs().union(*pick_b)
                c = cosine_from_counts(len(a & b), len(a), len(b))
                assert c == value


def _sample_products(rng, choices, n=4):
    out = []
    for _ in range(n):
        out.append([rng.choice(c) for c in choices])
    return out
