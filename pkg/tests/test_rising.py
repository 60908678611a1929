from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings

from conftest import as_label_sets, families, oracle_rise_forward
from uclab.setfam import (
    GroundSet,
    SetFamily,
    extremes,
    is_subset,
    is_union_closed,
    popcount,
    upset,
)
from uclab.rising import (
    Word,
    all_words,
    burnside_report,
    fiber,
    invariant_family,
    invariant_family_all_words,
    rise,
    star,
    words_realizing,
)
from uclab.harness import enumerate_union_closed

G3 = GroundSet.of(3)
PAPER_FAMILY = SetFamily.of_sets(G3, [["a"], ["a", "b", "c"]])
W_ABC = Word.from_labels("abc", G3)


def labels_forward(family, word):
    trans = rise(family, word)
    label = family.ground.subset_str
    return {label(k): label(v) for k, v in trans.forward.items()}


class TestWord:
    def test_permutation_required(self):
        with pytest.raises(ValueError):
            Word((0, 0, 1))

    def test_label_round_trip(self):
        w = Word.from_labels("cab", G3)
        assert w.order == (2, 0, 1)
        assert w.labels(G3) == "cab"

    def test_comma_form(self):
        g = GroundSet.of(2, ["x1", "x2"])
        assert Word.from_labels("x2,x1", g).order == (1, 0)
        with pytest.raises(ValueError):
            Word.from_labels("x2x1", g)


class TestRise:
    def test_paper_images_differ_by_word(self):
        image_abc = as_label_sets(rise(PAPER_FAMILY, W_ABC).image)
        image_acb = as_label_sets(rise(PAPER_FAMILY, Word.from_labels("acb", G3)).image)
        assert image_abc == {frozenset("ab"), frozenset("abc")}
        assert image_acb == {frozenset("ac"), frozenset("abc")}

    def test_against_definition_oracle(self):
        subsets = sorted(as_label_sets(PAPER_FAMILY), key=len)
        expected = oracle_rise_forward(subsets, list("abc"))
        got = labels_forward(PAPER_FAMILY, W_ABC)
        assert got == {",".join(sorted(k)): ",".join(sorted(v)) for k, v in expected.items()}

    def test_upward_closed_family_fixed(self):
        fam = upset(SetFamily.of_sets(G3, [["b"]]))
        for w in all_words(3):
            t = rise(fam, w)
            assert all(t.forward[m] == m for m in fam.members)

    def test_word_length_checked(self):
        with pytest.raises(ValueError, match="word length"):
            rise(PAPER_FAMILY, Word.identity(2))

    def test_empty_family(self):
        with pytest.raises(ValueError, match="empty family"):
            rise(SetFamily.of(G3, []), W_ABC)

    def test_transcript_shape(self):
        t = rise(PAPER_FAMILY, W_ABC)
        assert t.sections[0] == PAPER_FAMILY
        assert all(len(sec) == len(PAPER_FAMILY) for sec in t.sections)
        assert t.image == t.sections[-1]
        for g, trail in t.trajectories.items():
            assert trail[0] == g and trail[-1] == t.forward[g]
            for i, (prev, cur) in enumerate(zip(trail, trail[1:])):
                gained = cur & ~prev
                assert is_subset(prev, cur)
                assert gained in (0, 1 << t.word.order[i])

    @given(families(closed=True))
    @settings(max_examples=60, deadline=None)
    def test_oracle_image_and_upward_closure(self, fam):
        word = Word.identity(fam.ground.n)
        t = rise(fam, word)
        subsets = list(as_label_sets(fam))
        expected = oracle_rise_forward(subsets, list(fam.ground.labels))
        assert as_label_sets(t.image) == set(expected.values())
        for m in t.image.members:
            for i in range(fam.ground.n):
                assert m | 1 << i in t.image

    @given(families())
    @settings(max_examples=60, deadline=None)
    def test_general_families_still_rise_upward(self, fam):
        # union-closedness is not required for bijectivity or the upset image
        word = Word.identity(fam.ground.n)
        t = rise(fam, word)
        assert len(set(t.forward.values())) == len(fam)
        for m in t.image.members:
            for i in range(fam.ground.n):
                assert m | 1 << i in t.image


class TestStar:
    def test_examples(self):
        assert star(PAPER_FAMILY, G3.mask_of("ab")) == G3.mask_of("a")
        assert star(PAPER_FAMILY, G3.mask_of("a")) == G3.mask_of("a")
        assert star(PAPER_FAMILY, G3.mask_of("bc")) == 0

    def test_monotone_and_lands_in_family(self):
        mins, _ = extremes(PAPER_FAMILY)
        domain = upset(mins)
        for z in domain.members:
            for y in domain.members:
                if is_subset(z, y):
                    assert is_subset(star(PAPER_FAMILY, z), star(PAPER_FAMILY, y))
            assert star(PAPER_FAMILY, z) in PAPER_FAMILY

    def test_requires_union_closed(self):
        with pytest.raises(ValueError, match="not union-closed"):
            star(SetFamily.of_sets(GroundSet.of(2), [["a"], ["b"]]), 1)


class TestFiber:
    def test_paper_fibers(self):
        rep = fiber(PAPER_FAMILY, G3.mask_of("a"))
        assert as_label_sets(rep.fiber) == {frozenset("a"), frozenset("ab"), frozenset("ac")}
        assert as_label_sets(rep.max_fiber) == {frozenset("ab"), frozenset("ac")}
        top = fiber(PAPER_FAMILY, G3.mask_of("abc"))
        assert as_label_sets(top.fiber) == {frozenset("abc")}

    def test_upward_closed_fibers_are_singletons(self):
        fam = upset(SetFamily.of_sets(G3, [["a", "b"]]))
        for g in fam.members:
            rep = fiber(fam, g)
            assert rep.fiber.members == (g,)
            assert rep.max_fiber.members == (g,)

    def test_nonmember_rejected(self):
        with pytest.raises(ValueError, match="member"):
            fiber(PAPER_FAMILY, G3.mask_of("b"))

    @given(families(closed=True))
    @settings(max_examples=40, deadline=None)
    def test_fiber_properties(self, fam):
        mins, _ = extremes(fam)
        domain = set(upset(mins).members)
        seen = set()
        for g in fam.members:
            rep = fiber(fam, g)
            for h in rep.fiber.members:
                assert star(fam, h) == g and is_subset(g, h)
            assert not seen & set(rep.fiber.members)
            seen |= set(rep.fiber.members)
        assert seen == domain


class TestWordsRealizing:
    def test_paper_example(self):
        got = words_realizing(PAPER_FAMILY, G3.mask_of("a"), G3.mask_of("ab"))
        assert {w.labels(G3) for w in got} == {"abc", "bac", "bca"}
        got2 = words_realizing(PAPER_FAMILY, G3.mask_of("a"), G3.mask_of("ac"))
        assert {w.labels(G3) for w in got2} == {"acb", "cab", "cba"}

    def test_fixed_member_realized_by_all_words(self):
        got = words_realizing(PAPER_FAMILY, G3.mask_of("abc"), G3.mask_of("abc"))
        assert len(got) == factorial(3)

    def test_non_maximal_target_rejected(self):
        with pytest.raises(ValueError, match="maximal"):
            words_realizing(PAPER_FAMILY, G3.mask_of("a"), G3.mask_of("a"))


class TestInvariantFamily:
    def test_paper_example(self):
        inv = invariant_family(PAPER_FAMILY)
        assert as_label_sets(inv.family) == {
            frozenset("ab"),
            frozenset("ac"),
            frozenset("abc"),
        }
        assert inv.rank == 2
        assert 2 ** (3 - inv.rank) <= len(PAPER_FAMILY) <= 4

    def test_upward_closed_unchanged(self):
        fam = upset(SetFamily.of_sets(G3, [["b"], ["a", "c"]]))
        inv = invariant_family(fam)
        assert inv.family == fam
        assert inv.rank == min(popcount(m) for m in fam.members)

    def test_routes_agree_exhaustively_n3(self):
        for fam in enumerate_union_closed(3):
            assert invariant_family(fam).family == invariant_family_all_words(fam)

    def test_orbit_index_classes(self):
        inv = invariant_family(PAPER_FAMILY)
        classes = {}
        for x, owner in inv.orbit_index.items():
            classes.setdefault(owner, set()).add(x)
        for g in PAPER_FAMILY.members:
            assert classes[g] == set(fiber(PAPER_FAMILY, g).max_fiber.members)

    def test_all_words_route_capped(self):
        g = GroundSet.of(9, [f"x{i}" for i in range(9)])
        fam = SetFamily.of(g, [g.full])
        with pytest.raises(ValueError, match="fiber route"):
            invariant_family_all_words(fam)


class TestBurnside:
    def test_paper_worked_example(self):
        rep = burnside_report(PAPER_FAMILY)
        assert rep.word_stabilizer_sum == 12 == len(PAPER_FAMILY) * factorial(3)
        assert rep.inequality_lhs == Fraction(5, 6)
        assert rep.orbit_count == 2

    def test_upward_closed_equality(self):
        fam = upset(SetFamily.of_sets(G3, [["a"]]))
        rep = burnside_report(fam)
        assert len(fam) == 4
        assert rep.word_stabilizer_sum == 24
        assert rep.inequality_lhs == 1

    def test_full_set_only(self):
        fam = SetFamily.of(G3, [7])
        rep = burnside_report(fam)
        assert rep.orbit_count == 1
        assert rep.inequality_lhs == 1

    @given(families(max_n=3, closed=True))
    @settings(max_examples=30, deadline=None)
    def test_inequality_holds(self, fam):
        rep = burnside_report(fam)
        assert rep.inequality_lhs <= 1
        assert rep.word_stabilizer_sum == len(fam) * factorial(fam.ground.n)


class TestPerWordStatements:
    def test_interval_disjointness_n5_single_family(self):
        g5 = GroundSet.of(5)
        fam = SetFamily.of_sets(
            g5, [["a"], ["b", "c"], ["a", "b", "c"], ["a", "d", "e"], ["a", "b", "c", "d", "e"]]
        )
        fam = SetFamily.of(g5, fam.members)
        assert is_union_closed(fam)
        forwards = [rise(fam, w).forward for w in all_words(5)]
        for f in fam.members:
            for h in fam.members:
                for fwd1 in forwards:
                    for fwd2 in forwards:
                        overlap = is_subset(f | h, fwd1[f] & fwd2[h])
                        assert overlap == (f == h)

    def test_closure_in_sections(self):
        for w in all_words(3):
            t = rise(PAPER_FAMILY, w)
            for sec in t.sections:
                assert is_union_closed(sec)
                for z in sec.members:
                    for f in PAPER_FAMILY.members:
                        assert z | f in sec
