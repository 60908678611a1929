"""The rising operator, its fibers and orbits, and the invariant upset.

Rising applies one element at a time, in the order given by a word: a set
grows by the step element exactly when the grown set is absent from the
current section.  The resulting map is a bijection onto an upward-closed
image, and the union of images over all words is an invariant of the
family.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

from .setfam import (
    GroundSet,
    Mask,
    SetFamily,
    bit_indices,
    extremes,
    is_subset,
    maximal_of,
    popcount,
    require_union_closed,
    upset,
)

ALL_WORDS_MAX = 8


@dataclass(frozen=True)
class Word:
    """A permutation of element indices: order[j] rises at step j+1."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("word must be a permutation of 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Word":
        return cls(tuple(range(n)))

    @classmethod
    def from_labels(cls, text: str, ground: GroundSet) -> "Word":
        if "," in text:
            parts = [x.strip() for x in text.split(",")]
        elif all(len(lbl) == 1 for lbl in ground.labels):
            parts = list(text.strip())
        else:
            raise ValueError("multi-character labels require a comma-separated word")
        return cls(tuple(ground.index_of(p) for p in parts))

    def labels(self, ground: GroundSet) -> str:
        if all(len(lbl) == 1 for lbl in ground.labels):
            return "".join(ground.labels[i] for i in self.order)
        return ",".join(ground.labels[i] for i in self.order)


def all_words(n: int) -> Iterator[Word]:
    for perm in itertools.permutations(range(n)):
        yield Word(perm)


@dataclass(frozen=True)
class RisingTranscript:
    """Full record of one rising run.

    ``sections[i]`` is the family after i steps; ``trajectories[g]`` is the
    path of input member g through the sections; ``forward`` maps each input
    member to its image and ``backward`` inverts it.
    """

    input: SetFamily
    word: Word
    sections: tuple[SetFamily, ...]
    trajectories: dict[Mask, tuple[Mask, ...]]
    image: SetFamily
    forward: dict[Mask, Mask]
    backward: dict[Mask, Mask]


def rise(family: SetFamily, word: Word) -> RisingTranscript:
    """Run the rising process for ``word``; the family need not be union-closed."""
    n = family.ground.n
    if len(word.order) != n:
        raise ValueError("word length must equal ground set size")
    if not family.members:
        raise ValueError("empty family")
    cur = list(family.members)
    cur_set = family._member_set
    sections = [family]
    trails = [[m] for m in cur]
    for a in word.order:
        bit = 1 << a
        cur = [z if (z | bit) in cur_set else (z | bit) for z in cur]
        cur_set = frozenset(cur)
        assert len(cur_set) == len(family.members), "rising step must be injective"
        sections.append(SetFamily.of(family.ground, cur))
        for trail, z in zip(trails, cur):
            trail.append(z)
    trajectories = {m: tuple(t) for m, t in zip(family.members, trails)}
    forward = {m: t[-1] for m, t in trajectories.items()}
    backward = {v: k for k, v in forward.items()}
    return RisingTranscript(
        input=family,
        word=word,
        sections=tuple(sections),
        trajectories=trajectories,
        image=sections[-1],
        forward=forward,
        backward=backward,
    )


def _star(family: SetFamily, z: Mask) -> Mask:
    u = 0
    for f in family.members:
        if is_subset(f, z):
            u |= f
    return u


def has_member_below(family: SetFamily, z: Mask) -> bool:
    """Whether any member (the empty set included) is contained in ``z``.

    Distinct from ``star(...) == 0``: a family containing the empty set has
    a member below everything even though the union stays empty.
    """
    return any(is_subset(f, z) for f in family.members)


def star(family: SetFamily, z: Mask) -> Mask:
    """Union of all members contained in ``z`` (empty union gives the empty set)."""
    require_union_closed(family)
    return _star(family, z)


def _star_map(family: SetFamily) -> dict[Mask, Mask]:
    """star over the whole domain upset(min(family)), computed in one sweep."""
    mins, _ = extremes(family)
    return {z: _star(family, z) for z in upset(mins).members}


@dataclass(frozen=True)
class FiberReport:
    """One fiber: all domain masks whose star is the owner, plus its maxima."""

    owner: Mask
    fiber: SetFamily
    max_fiber: SetFamily


@lru_cache(maxsize=4096)
def _fiber_partition(family: SetFamily) -> dict[Mask, tuple[Mask, ...]]:
    part: dict[Mask, list[Mask]] = defaultdict(list)
    for z, s in _star_map(family).items():
        part[s].append(z)
    return {owner: tuple(masks) for owner, masks in part.items()}


def fiber(family: SetFamily, owner: Mask) -> FiberReport:
    require_union_closed(family)
    if owner not in family:
        raise ValueError("fiber owner must be a family member")
    masks = _fiber_partition(family).get(owner, ())
    return FiberReport(
        owner=owner,
        fiber=SetFamily.of(family.ground, masks),
        max_fiber=SetFamily.of(family.ground, maximal_of(masks)),
    )


def words_realizing(family: SetFamily, owner: Mask, target: Mask) -> tuple[Word, ...]:
    """All words whose rising sends ``owner`` to ``target`` (brute force).

    ``target`` must be maximal in the owner's fiber; the result always
    contains every word with a prefix equal to target minus owner, so it has
    at least k!(n-k)! entries for k the size of that difference.
    """
    n = family.ground.n
    if n > ALL_WORDS_MAX:
        raise ValueError(f"all-words sweep capped at n <= {ALL_WORDS_MAX}")
    report = fiber(family, owner)
    if target not in report.max_fiber:
        raise ValueError("target not a maximal fiber element")
    hits = tuple(w for w in all_words(n) if rise(family, w).forward[owner] == target)
    added = list(bit_indices(target & ~owner))
    rest = [i for i in range(n) if i not in added]
    hit_set = set(hits)
    for head in itertools.permutations(added):
        for tail in itertools.permutations(rest):
            assert Word(head + tail) in hit_set, "prefix word must realize the target"
    assert len(hits) >= factorial(len(added)) * factorial(n - len(added))
    return hits


@dataclass(frozen=True)
class InvariantFamily:
    """The word-independent upset of a family, with rank and fiber owners."""

    family: SetFamily
    rank: int
    orbit_index: dict[Mask, Mask]


@lru_cache(maxsize=4096)
def invariant_family(family: SetFamily) -> InvariantFamily:
    """Invariant upset via the fiber route: the union of all maximal fibers."""
    require_union_closed(family)
    n = family.ground.n
    part = _fiber_partition(family)
    orbit_index: dict[Mask, Mask] = {}
    for owner, masks in part.items():
        for x in maximal_of(masks):
            orbit_index[x] = owner
    members = SetFamily.of(family.ground, orbit_index)
    assert len(set(orbit_index.values())) == len(family), "one orbit per member"
    for x in members:
        for i in range(n):
            assert x | (1 << i) in members, "invariant family must be upward-closed"
    mins, _ = extremes(members)
    rank = min(popcount(m) for m in mins.members)
    assert (1 << (n - rank)) <= len(family) <= sum(comb(n, i) for i in range(rank, n + 1))
    return InvariantFamily(family=members, rank=rank, orbit_index=orbit_index)


def invariant_family_all_words(family: SetFamily) -> SetFamily:
    """Invariant upset by sweeping every word; cross-check for the fiber route."""
    require_union_closed(family)
    n = family.ground.n
    if n > ALL_WORDS_MAX:
        raise ValueError(
            f"all-words sweep capped at n <= {ALL_WORDS_MAX}; use the fiber route"
        )
    out: set[Mask] = set()
    for w in all_words(n):
        out.update(rise(family, w).image.members)
    return SetFamily.of(family.ground, out)


@dataclass(frozen=True)
class BurnsideReport:
    orbit_count: int
    word_stabilizer_sum: int
    inequality_lhs: Fraction


def burnside_report(family: SetFamily) -> BurnsideReport:
    """Count word stabilizers over the invariant upset.

    The word stabilizer of x is the set of words sending the owner of x back
    to x; the total count over the invariant family equals |family| * n!, and
    the averaged binomial reciprocals are at most 1.
    """
    require_union_closed(family)
    n = family.ground.n
    if n > 7:
        raise ValueError("word-stabilizer sweep capped at n <= 7")
    inv = invariant_family(family)
    counts: Counter[Mask] = Counter()
    for w in all_words(n):
        fwd = rise(family, w).forward
        for g in family.members:
            counts[fwd[g]] += 1
    assert set(counts) == set(inv.family.members), "word images must cover the invariant upset"
    for x, c in counts.items():
        k = popcount(x & ~inv.orbit_index[x])
        assert c >= factorial(k) * factorial(n - k)
    total = sum(counts.values())
    assert total == len(family) * factorial(n)
    lhs = Fraction(0)
    for x, owner in inv.orbit_index.items():
        lhs += Fraction(1, comb(n, popcount(x & ~owner)))
    lhs /= len(family)
    assert lhs <= 1
    return BurnsideReport(
        orbit_count=len(set(inv.orbit_index.values())),
        word_stabilizer_sum=total,
        inequality_lhs=lhs,
    )
