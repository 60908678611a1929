"""Counting sets attached to a family and to its rising images.

For a fixed element: members whose extension by the element leaves the
family, members whose deletion of the element leaves it, and the rising
analogues (spurious = gained during rising, pure = image members whose
deletion leaves the image).  The hyper variants intersect over all words.
Every identity the constructions satisfy is asserted on the spot.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .setfam import (
    Mask,
    SetFamily,
    bit_indices,
    cover_pairs,
    extremes,
    is_subset,
    require_union_closed,
)
from .rising import (
    RisingTranscript,
    Word,
    _fiber_partition,
    _star,
    all_words,
    has_member_below,
    invariant_family,
    rise,
)


@dataclass(frozen=True)
class ElementBalance:
    """Per-element balance of a family (no union-closedness assumed).

    ``up_missing`` holds members z with z + a outside the family;
    ``down_missing`` holds members z containing a with z - a outside.
    """

    element: int
    up_missing: SetFamily
    down_missing: SetFamily


def element_balance(family: SetFamily, a: int) -> ElementBalance:
    if not 0 <= a < family.ground.n:
        raise ValueError("element not in ground set")
    bit = 1 << a
    up = [z for z in family.members if z | bit not in family]
    down = [z for z in family.members if z & bit and z & ~bit not in family]
    n_with = len(family.with_element(a))
    n_without = len(family) - n_with
    assert n_with - n_without == len(down) - len(up)
    return ElementBalance(
        element=a,
        up_missing=family.replace(up),
        down_missing=family.replace(down),
    )


@dataclass(frozen=True)
class RisingAccounts:
    """Spurious/pure bookkeeping for one rising run, by element and by image member."""

    transcript: RisingTranscript
    spurious_by_element: dict[int, SetFamily]
    pure_by_element: dict[int, SetFamily]
    spurious_of: dict[Mask, Mask]
    pure_of: dict[Mask, Mask]


@lru_cache(maxsize=4096)
def rising_accounts(family: SetFamily, word: Word) -> RisingAccounts:
    require_union_closed(family)
    t = rise(family, word)
    n = family.ground.n
    image = t.image
    spurious: dict[int, SetFamily] = {}
    pure: dict[int, SetFamily] = {}
    for a in range(n):
        bit = 1 << a
        forward_with_a = {t.forward[f] for f in family.with_element(a)}
        spur = [e for e in image.members if e & bit and not t.backward[e] & bit]
        pur = [e for e in forward_with_a if e & ~bit not in image]
        spurious[a] = image.replace(spur)
        pure[a] = image.replace(pur)

        image_with = set(image.with_element(a))
        image_without = image.without_element(a)
        shifted = {z | bit for z in image_without}
        # partition of the image members containing a
        assert set(spur) == image_with - forward_with_a
        assert set(pur) == forward_with_a - shifted
        assert shifted <= forward_with_a, "embedding of the a-free image"
        assert len(image_with) == len(image_without) + len(pur) + len(spur)
        assert set(spur) | set(pur) == {z for z in image_with if z & ~bit not in image}
        balance = element_balance(family, a)
        assert len(pur) - len(spur) == len(balance.down_missing) - len(balance.up_missing)
        assert len(pur) <= len(balance.down_missing)
        assert len(spur) <= len(balance.up_missing)

    spurious_of = {e: e & ~t.backward[e] for e in image.members}
    pure_of = {
        e: sum(1 << a for a in range(n) if e in pure[a]) for e in image.members
    }
    assert sum(len(v) for v in spurious.values()) == sum(
        v.bit_count() for v in spurious_of.values()
    )
    assert sum(len(v) for v in pure.values()) == sum(v.bit_count() for v in pure_of.values())
    for e in image.members:
        assert not spurious_of[e] & pure_of[e]

    # Frankl reformulation: a majority element exists iff pure >= spurious somewhere
    frankl = any(2 * len(family.with_element(a)) >= len(family) for a in range(n))
    reform = any(len(pure[a]) >= len(spurious[a]) for a in range(n))
    assert frankl == reform

    return RisingAccounts(
        transcript=t,
        spurious_by_element=spurious,
        pure_by_element=pure,
        spurious_of=spurious_of,
        pure_of=pure_of,
    )


def guaranteed_pure(family: SetFamily, word: Word) -> dict[int, SetFamily]:
    """Images of members with no member below their element deletion; always pure."""
    accounts = rising_accounts(family, word)
    t = accounts.transcript
    mins, _ = extremes(family)
    out: dict[int, SetFamily] = {}
    for a in range(family.ground.n):
        bit = 1 << a
        masks = [
            t.forward[g]
            for g in family.with_element(a)
            if not has_member_below(family, g & ~bit)
        ]
        out[a] = t.image.replace(masks)
        assert set(masks) <= set(accounts.pure_by_element[a].members)
        if mins.with_element(a):
            assert masks, "guaranteed pure images exist under a minimal member"
    return out


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of a per-member identity sweep; violations should be empty."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def local_identities(family: SetFamily, word: Word) -> IdentityReport:
    """Check the per-member forms of spurious and pure against their element forms."""
    accounts = rising_accounts(family, word)
    t = accounts.transcript
    bad = []
    for e in t.image.members:
        below = [x for x in t.image.members if is_subset(x, e)]
        meet = t.image.ground.full
        spur_meet = t.image.ground.full
        for x in below:
            meet &= x
            spur_meet &= accounts.spurious_of[x]
        if accounts.spurious_of[e] != spur_meet:
            bad.append(f"spurious mismatch at {t.image.ground.subset_str(e)}")
        if accounts.pure_of[e] != meet & t.backward[e]:
            bad.append(f"pure mismatch at {t.image.ground.subset_str(e)}")
    return IdentityReport(violations=tuple(bad))


@dataclass(frozen=True)
class HyperAccounts:
    """Word-independent spurious/pure sets and the covering structure."""

    hyper_spurious_by_element: dict[int, SetFamily]
    hyper_pure_by_element: dict[int, SetFamily]
    hyper_spurious_of: dict[Mask, Mask]
    hyper_pure_of: dict[Mask, Mask]
    covers: dict[tuple[int, Mask], SetFamily]


@lru_cache(maxsize=2048)
def hyper_accounts(family: SetFamily) -> HyperAccounts:
    require_union_closed(family)
    n = family.ground.n
    part = _fiber_partition(family)
    max_fiber = {g: SetFamily.of(family.ground, part[g]).replace(
        m for m in part[g] if not any(x != m and is_subset(m, x) for x in part[g])
    ) for g in family.members}
    inv = invariant_family(family)

    hyper_spurious_of: dict[Mask, Mask] = {}
    hyper_pure_of: dict[Mask, Mask] = {}
    for g in family.members:
        meet = family.ground.full
        for eta in max_fiber[g].members:
            meet &= eta & ~g
        hyper_spurious_of[g] = meet
        pure_mask = 0
        for a in bit_indices(g):
            bit = 1 << a
            if all(eta & ~bit not in inv.family for eta in max_fiber[g].members):
                pure_mask |= bit
        hyper_pure_of[g] = pure_mask
        assert not hyper_spurious_of[g] & g
        assert is_subset(hyper_pure_of[g], g)

    covers: dict[tuple[int, Mask], SetFamily] = {}
    for a in range(n):
        bit = 1 << a
        by_owner: dict[Mask, list[Mask]] = {g: [] for g in family.without_element(a)}
        for h in family.with_element(a):
            owner = _star(family, h & ~bit)
            if owner in by_owner:
                by_owner[owner].append(h)
        for g, hs in by_owner.items():
            covers[(a, g)] = family.replace(hs)

    pairs = cover_pairs(family)
    above = {g: [p.upper for p in pairs if p.lower == g] for g in family.members}
    for g in family.members:
        joined = g
        for h in above[g]:
            joined |= h
        # covered-in-a characterizations; the union is joined with g so the
        # identity also holds for members with no cover at all
        assert hyper_spurious_of[g] == family.ground.full & ~joined
        expected = 0
        for b in range(n):
            if g >> b & 1:
                continue
            if not covers[(b, g)].members:
                expected |= 1 << b
        assert hyper_spurious_of[g] == expected

    hyper_spurious = {
        a: family.replace(
            g for g in family.without_element(a) if hyper_spurious_of[g] >> a & 1
        )
        for a in range(n)
    }
    hyper_pure = {
        a: family.replace(g for g in family.with_element(a) if hyper_pure_of[g] >> a & 1)
        for a in range(n)
    }

    for a in range(n):
        for g in family.without_element(a):
            assert bool(covers[(a, g)].members) == (not hyper_spurious_of[g] >> a & 1)
        lo = len(family.without_element(a)) - len(hyper_spurious[a])
        mid = sum(
            len(maximal_members(covers[(a, g)]))
            for g in family.without_element(a)
        )
        hi = len(family.with_element(a)) - len(hyper_pure[a])
        assert lo <= mid <= hi, "covering sandwich"

    return HyperAccounts(
        hyper_spurious_by_element=hyper_spurious,
        hyper_pure_by_element=hyper_pure,
        hyper_spurious_of=hyper_spurious_of,
        hyper_pure_of=hyper_pure_of,
        covers=covers,
    )


def maximal_members(family: SetFamily) -> tuple[Mask, ...]:
    ms = family.members
    return tuple(m for m in ms if not any(x != m and is_subset(m, x) for x in ms))


def hyper_word_sweep(family: SetFamily) -> IdentityReport:
    """Check the hyper sets against intersections over every word.

    The per-word locals are read straight off bare transcripts (spurious is
    the rising gain, pure the deletable bits of the preimage), independently
    of the fiber route used by :func:`hyper_accounts`.
    """
    n = family.ground.n
    if n > 5:
        raise ValueError("hyper word sweep capped at n <= 5")
    require_union_closed(family)
    acc = hyper_accounts(family)
    spur_meet = {g: family.ground.full for g in family.members}
    pure_meet = {g: family.ground.full for g in family.members}
    for w in all_words(n):
        t = rise(family, w)
        image = t.image
        for g in family.members:
            eta = t.forward[g]
            spur_meet[g] &= eta & ~g
            pure = 0
            for a in bit_indices(g):
                if eta & ~(1 << a) not in image:
                    pure |= 1 << a
            pure_meet[g] &= pure
    bad = []
    for g in family.members:
        if acc.hyper_spurious_of[g] != spur_meet[g]:
            bad.append(f"hyper-spurious mismatch at {family.ground.subset_str(g)}")
        if acc.hyper_pure_of[g] != pure_meet[g]:
            bad.append(f"hyper-pure mismatch at {family.ground.subset_str(g)}")
    return IdentityReport(violations=tuple(bad))


def covering_equivalences(family: SetFamily) -> IdentityReport:
    """Three-way equivalence between fiber maxima, covers, and the cover sets."""
    require_union_closed(family)
    n = family.ground.n
    if n > 5:
        raise ValueError("covering equivalence sweep capped at n <= 5")
    part = _fiber_partition(family)
    pairs = cover_pairs(family)
    acc = hyper_accounts(family)
    bad = []
    for a in range(n):
        bit = 1 << a
        for g in family.without_element(a):
            maxima = [
                m
                for m in part[g]
                if not any(x != m and is_subset(m, x) for x in part[g])
            ]
            has_free_max = any(not eta & bit for eta in maxima)
            has_cover = any(
                p.lower == g and p.upper & bit for p in pairs
            )
            has_cov_set = bool(acc.covers[(a, g)].members)
            if not has_free_max == has_cover == has_cov_set:
                bad.append(
                    f"covering mismatch at element {family.ground.labels[a]}, "
                    f"member {family.ground.subset_str(g)}"
                )
    return IdentityReport(violations=tuple(bad))


def spurious_monotonicity_witness(family: SetFamily, small: Mask, large: Mask) -> Word:
    """A word under which the large member's spurious set sits inside the small one's.

    Built from a maximal fiber element of ``large`` and one of ``small``
    containing its shifted copy; the word lists the first difference, then
    the second, then the rest, and the lexicographically smallest such word
    is returned.  The inclusion is asserted before returning.
    """
    require_union_closed(family)
    if small not in family or large not in family:
        raise ValueError("both arguments must be family members")
    if not is_subset(small, large):
        raise ValueError("first member must be contained in the second")
    n = family.ground.n
    part = _fiber_partition(family)

    def maxima(owner: Mask) -> list[Mask]:
        pool = part[owner]
        return [m for m in pool if not any(x != m and is_subset(m, x) for x in pool)]

    candidates = []
    for eta in sorted(maxima(large)):
        lifted = (eta & ~large) | small
        for nu in sorted(maxima(small)):
            if not is_subset(lifted, nu):
                continue
            first = list(bit_indices(eta & ~large))
            second = [i for i in bit_indices(nu & ~small) if i not in first]
            rest = [i for i in range(n) if i not in first and i not in second]
            candidates.append(Word(tuple(first + second + rest)))
    assert candidates, "lemma guarantees a witness word"
    word = min(candidates, key=lambda w: w.order)
    accounts = rising_accounts(family, word)
    fwd = accounts.transcript.forward
    assert is_subset(accounts.spurious_of[fwd[large]], accounts.spurious_of[fwd[small]])
    return word
