import pytest
from hypothesis import given, settings

from conftest import as_label_sets, families, oracle_close
from uclab.setfam import (
    CoverPair,
    GroundSet,
    SetFamily,
    close_under_union,
    cover_pairs,
    extremes,
    format_family,
    ideal,
    is_antichain,
    is_subset,
    is_union_closed,
    is_union_independent,
    join_irreducibles,
    normalize,
    parse_family,
    upset,
)


G3 = GroundSet.of(3)
PAPER_FAMILY = SetFamily.of_sets(G3, [["a"], ["a", "b", "c"]])


def masks_of(ground, *subsets):
    return SetFamily.of_sets(ground, subsets)


class TestGroundSet:
    def test_defaults(self):
        g = GroundSet.of(4)
        assert g.labels == ("a", "b", "c", "d")
        assert g.full == 15

    def test_size_limits(self):
        with pytest.raises(ValueError):
            GroundSet.of(0)
        with pytest.raises(ValueError):
            GroundSet.of(17, [str(i) for i in range(17)])
        GroundSet.of(16)

    def test_distinct_labels(self):
        with pytest.raises(ValueError):
            GroundSet.of(2, ["a", "a"])

    def test_subset_str(self):
        assert G3.subset_str(0) == "{}"
        assert G3.subset_str(0b101) == "a,c"


class TestFamilyType:
    def test_canonical_order_enforced(self):
        with pytest.raises(ValueError):
            SetFamily(G3, (3, 1))
        with pytest.raises(ValueError):
            SetFamily(G3, (1, 1))

    def test_mask_bound(self):
        with pytest.raises(ValueError):
            SetFamily(G3, (8,))

    def test_of_dedupes_and_sorts(self):
        fam = SetFamily.of(G3, [5, 1, 5])
        assert fam.members == (1, 5)


class TestCloseUnderUnion:
    def test_single_forced_union(self):
        fam = masks_of(GroundSet.of(2), ["a"], ["b"])
        assert as_label_sets(close_under_union(fam)) == {
            frozenset("a"),
            frozenset("b"),
            frozenset("ab"),
        }

    def test_idempotent_on_closed(self):
        closed = close_under_union(masks_of(G3, ["a"], ["b"], ["c"]))
        assert close_under_union(closed) == closed

    def test_three_singletons_oracle(self):
        fam = masks_of(G3, ["a"], ["b"], ["c"])
        expected = oracle_close(as_label_sets(fam))
        assert as_label_sets(close_under_union(fam)) == expected
        assert len(expected) == 7

    def test_empty_errors(self):
        with pytest.raises(ValueError, match="empty family"):
            close_under_union(SetFamily.of(G3, []))

    @given(families())
    @settings(max_examples=60, deadline=None)
    def test_matches_oracle_and_monotone(self, fam):
        closed = close_under_union(fam)
        assert as_label_sets(closed) == oracle_close(as_label_sets(fam))
        assert is_union_closed(closed)
        smaller = SetFamily.of(fam.ground, fam.members[: max(1, len(fam) - 1)])
        assert set(close_under_union(smaller).members) <= set(closed.members)


class TestIsUnionClosed:
    def test_paper_family(self):
        assert is_union_closed(PAPER_FAMILY)

    def test_missing_union(self):
        assert not is_union_closed(masks_of(GroundSet.of(2), ["a"], ["b"]))

    @given(families())
    @settings(max_examples=40, deadline=None)
    def test_closure_output_closed(self, fam):
        assert is_union_closed(close_under_union(fam))


class TestExtremes:
    def test_paper_family(self):
        mins, maxs = extremes(PAPER_FAMILY)
        assert as_label_sets(mins) == {frozenset("a")}
        assert as_label_sets(maxs) == {frozenset("abc")}

    def test_antichain_fixed(self):
        fam = masks_of(G3, ["a", "b"], ["a", "c"])
        assert extremes(fam) == (fam, fam)

    def test_chain_by_scan(self):
        fam = masks_of(G3, ["a"], ["a", "b"], ["a", "b", "c"])
        mins, maxs = extremes(fam)
        for m in fam.members:  # pairwise containment oracle
            minimal = not any(x != m and is_subset(x, m) for x in fam.members)
            maximal = not any(x != m and is_subset(m, x) for x in fam.members)
            assert (m in mins) == minimal
            assert (m in maxs) == maximal

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            extremes(SetFamily.of(G3, []))

    @given(families())
    @settings(max_examples=40, deadline=None)
    def test_both_are_antichains(self, fam):
        mins, maxs = extremes(fam)
        assert is_antichain(mins) and is_antichain(maxs)


class TestUpset:
    def test_singleton(self):
        up = upset(masks_of(G3, ["a"]))
        assert as_label_sets(up) == {
            frozenset("a"),
            frozenset("ab"),
            frozenset("ac"),
            frozenset("abc"),
        }

    def test_full_set(self):
        up = upset(masks_of(G3, ["a", "b", "c"]))
        assert as_label_sets(up) == {frozenset("abc")}

    def test_two_generators_full_scan(self):
        seed = masks_of(G3, ["a", "b"], ["a", "c"])
        expected = {
            z
            for z in range(8)
            if is_subset(seed.members[0], z) or is_subset(seed.members[1], z)
        }
        assert set(upset(seed).members) == expected

    @given(families(max_n=5))
    @settings(max_examples=40, deadline=None)
    def test_upward_closed_by_scan(self, fam):
        up = upset(fam)
        for m in up.members:
            for i in range(fam.ground.n):
                assert m | 1 << i in up

    def test_upward_closed_at_n8(self):
        g = GroundSet.of(8)
        up = upset(SetFamily.of(g, [0b10011, 0b1100, 0b10000000]))
        for m in up.members:
            for i in range(8):
                assert m | 1 << i in up


class TestIdeal:
    def test_paper_examples(self):
        assert ideal(PAPER_FAMILY, masks_of(G3, ["a"])) == PAPER_FAMILY
        assert ideal(PAPER_FAMILY, masks_of(G3, ["a", "b", "c"])).members == (7,)
        mins, _ = extremes(PAPER_FAMILY)
        assert ideal(PAPER_FAMILY, mins) == PAPER_FAMILY

    @given(families(closed=True))
    @settings(max_examples=40, deadline=None)
    def test_subset_and_min_recovers(self, fam):
        mins, _ = extremes(fam)
        assert set(ideal(fam, mins).members) == set(fam.members)
        assert set(ideal(fam, masks_of(fam.ground)).members) == set()


class TestJoinIrreducibles:
    @staticmethod
    def oracle(fam):
        out = []
        for g in fam.members:
            pairs = (
                (h, t)
                for h in fam.members
                for t in fam.members
                if h != g and t != g and h | t == g
            )
            if next(pairs, None) is None:
                out.append(g)
        return set(out)

    def test_paper_family(self):
        assert set(join_irreducibles(PAPER_FAMILY).members) == self.oracle(PAPER_FAMILY)
        assert len(join_irreducibles(PAPER_FAMILY)) == 2

    def test_upper_levels(self):
        fam = SetFamily.of(G3, [m for m in range(8) if bin(m).count("1") >= 2])
        irr = join_irreducibles(fam)
        assert set(irr.members) == self.oracle(fam)
        assert {bin(m).count("1") for m in irr.members} == {2}
        assert len(irr) == 3

    def test_upset_of_single_member(self):
        fam = upset(masks_of(G3, ["b"]))
        irr = join_irreducibles(fam)
        assert set(irr.members) == self.oracle(fam)
        assert G3.mask_of("b") in irr

    def test_requires_union_closed(self):
        with pytest.raises(ValueError, match="not union-closed"):
            join_irreducibles(masks_of(GroundSet.of(2), ["a"], ["b"]))

    @given(families(closed=True))
    @settings(max_examples=60, deadline=None)
    def test_generates_and_independent(self, fam):
        irr = join_irreducibles(fam)
        mins, _ = extremes(fam)
        assert set(mins.members) <= set(irr.members)
        assert close_under_union(irr) == fam
        assert is_union_independent(irr)


class TestUnionIndependence:
    def test_singletons(self):
        assert is_union_independent(masks_of(G3, ["a"], ["b"]))

    def test_dependent_triple(self):
        assert not is_union_independent(masks_of(GroundSet.of(2), ["a"], ["b"], ["a", "b"]))

    def test_empty_member_alone_is_independent(self):
        assert is_union_independent(SetFamily.of(G3, [0, 1]))


class TestCoverPairs:
    def test_two_comparable(self):
        assert cover_pairs(PAPER_FAMILY) == (CoverPair(1, 7),)

    def test_antichain_has_none(self):
        assert cover_pairs(masks_of(G3, ["a", "b"], ["a", "c"])) == ()

    def test_powerset_n2_oracle(self):
        g = GroundSet.of(2)
        fam = SetFamily.of(g, range(4))
        got = set()
        for f in fam.members:  # triple loop oracle
            for h in fam.members:
                if f == h or not is_subset(f, h):
                    continue
                if not any(
                    x != f and x != h and is_subset(f, x) and is_subset(x, h)
                    for x in fam.members
                ):
                    got.add((f, h))
        assert {(p.lower, p.upper) for p in cover_pairs(fam)} == got
        assert len(got) == 4


class TestNormalize:
    def test_drops_empty_and_shrinks(self):
        g = GroundSet.of(4)
        fam = SetFamily.of_sets(g, [[], ["b"], ["b", "d"]])
        out = normalize(fam)
        assert out.ground.labels == ("b", "d")
        assert as_label_sets(out) == {frozenset("b"), frozenset("bd")}

    def test_all_empty_errors(self):
        with pytest.raises(ValueError, match="empty family"):
            normalize(SetFamily.of(G3, [0]))


class TestFamilyFormat:
    def test_round_trip(self):
        fam = SetFamily.of(G3, [0, 1, 5, 7])
        assert parse_family(format_family(fam)) == fam

    def test_comments_and_empty_set(self):
        text = "# header\nground: a,b,c  # trailing\n{}\na,c # inline\n"
        fam = parse_family(text)
        assert fam.members == (0, 5)

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="unknown element"):
            parse_family("ground: a,b\nc\n")

    def test_missing_ground(self):
        with pytest.raises(ValueError, match="ground"):
            parse_family("a,b\n")

    @given(families(max_n=5))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_any(self, fam):
        assert parse_family(format_family(fam)) == fam
