"""Ground sets, subset masks, and set-family algebra.

A subset of the ground set is an n-bit integer mask (bit i set means
element i is a member).  A family is a canonically sorted, duplicate-free
tuple of masks over a fixed ground set.  All values are immutable and all
operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

Mask = int

MAX_GROUND = 16

_DEFAULT_LABELS = "abcdefghijklmnop"


def popcount(mask: Mask) -> int:
    return mask.bit_count()


def bit_indices(mask: Mask) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: Mask, b: Mask) -> bool:
    return a | b == b


@dataclass(frozen=True)
class GroundSet:
    """A finite ground set of n labelled elements, n between 1 and 16."""

    n: int
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground set size must be in 1..{MAX_GROUND}, got {self.n}")
        if len(self.labels) != self.n:
            raise ValueError("label count must equal ground set size")
        if len(set(self.labels)) != self.n:
            raise ValueError("labels must be pairwise distinct")

    @classmethod
    def of(cls, n: int, labels: Iterable[str] | None = None) -> "GroundSet":
        if labels is None:
            labels = _DEFAULT_LABELS[:n]
        return cls(n, tuple(labels))

    @property
    def full(self) -> Mask:
        return (1 << self.n) - 1

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown element label {label!r}") from None

    def mask_of(self, names: Iterable[str]) -> Mask:
        mask = 0
        for name in names:
            mask |= 1 << self.index_of(name)
        return mask

    def subset_str(self, mask: Mask) -> str:
        """Render a mask as comma-separated labels; the empty set is ``{}``."""
        if mask == 0:
            return "{}"
        return ",".join(self.labels[i] for i in bit_indices(mask))


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free family of subsets in canonical (ascending mask) order."""

    ground: GroundSet
    members: tuple[Mask, ...]
    _member_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for prev, cur in zip(self.members, self.members[1:]):
            if prev >= cur:
                raise ValueError("members must be strictly ascending")
        if self.members and not 0 <= self.members[-1] <= self.ground.full:
            raise ValueError("member mask outside the ground set")
        if self.members and self.members[0] < 0:
            raise ValueError("member mask outside the ground set")
        object.__setattr__(self, "_member_set", frozenset(self.members))

    @classmethod
    def of(cls, ground: GroundSet, masks: Iterable[Mask]) -> "SetFamily":
        return cls(ground, tuple(sorted(set(masks))))

    @classmethod
    def of_sets(cls, ground: GroundSet, subsets: Iterable[Iterable[str]]) -> "SetFamily":
        return cls.of(ground, (ground.mask_of(s) for s in subsets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Mask]:
        return iter(self.members)

    def __contains__(self, mask: Mask) -> bool:
        return mask in self._member_set

    def __str__(self) -> str:
        inner = ", ".join("{" + self.ground.subset_str(m).strip("{}") + "}" for m in self.members)
        return "{" + inner + "}"

    def with_element(self, a: int) -> tuple[Mask, ...]:
        """Members containing element index ``a``."""
        bit = 1 << a
        return tuple(m for m in self.members if m & bit)

    def without_element(self, a: int) -> tuple[Mask, ...]:
        """Members not containing element index ``a``."""
        bit = 1 << a
        return tuple(m for m in self.members if not m & bit)

    def replace(self, masks: Iterable[Mask]) -> "SetFamily":
        return SetFamily.of(self.ground, masks)


@dataclass(frozen=True)
class CoverPair:
    """A covering pair inside a family: lower is covered by upper."""

    lower: Mask
    upper: Mask


def minimal_of(masks: Iterable[Mask]) -> tuple[Mask, ...]:
    """Masks with no strict subset among ``masks``."""
    pool = sorted(set(masks))
    return tuple(m for m in pool if not any(x != m and is_subset(x, m) for x in pool))


def maximal_of(masks: Iterable[Mask]) -> tuple[Mask, ...]:
    """Masks with no strict superset among ``masks``."""
    pool = sorted(set(masks))
    return tuple(m for m in pool if not any(x != m and is_subset(m, x) for x in pool))


def is_antichain(family: SetFamily) -> bool:
    ms = family.members
    return not any(
        is_subset(ms[i], ms[j]) or is_subset(ms[j], ms[i])
        for i in range(len(ms))
        for j in range(i + 1, len(ms))
    )


def close_under_union(generators: SetFamily) -> SetFamily:
    """Smallest union-closed family containing the generators."""
    if not generators.members:
        raise ValueError("empty family")
    closed = set(generators.members)
    frontier = list(closed)
    while frontier:
        fresh = []
        snapshot = list(closed)
        for z in frontier:
            for f in snapshot:
                u = z | f
                if u not in closed:
                    closed.add(u)
                    fresh.append(u)
        frontier = fresh
    return SetFamily.of(generators.ground, closed)


@lru_cache(maxsize=8192)
def is_union_closed(family: SetFamily) -> bool:
    ms = family.members
    for i, f in enumerate(ms):
        for g in ms[i + 1 :]:
            if f | g not in family:
                return False
    return True


def require_union_closed(family: SetFamily) -> None:
    if not is_union_closed(family):
        raise ValueError("family not union-closed")


def extremes(family: SetFamily) -> tuple[SetFamily, SetFamily]:
    """Minimal and maximal members of the family, each an antichain."""
    if not family.members:
        raise ValueError("empty family")
    return (
        family.replace(minimal_of(family.members)),
        family.replace(maximal_of(family.members)),
    )


def upset(seed: SetFamily) -> SetFamily:
    """All masks of the full powerset containing some member of ``seed``."""
    if not seed.members:
        return seed
    out = [
        z
        for z in range(1 << seed.ground.n)
        if any(is_subset(m, z) for m in seed.members)
    ]
    return SetFamily.of(seed.ground, out)


def ideal(family: SetFamily, seed: SetFamily) -> SetFamily:
    """Members of ``family`` containing at least one member of ``seed``."""
    out = [f for f in family.members if any(is_subset(m, f) for m in seed.members)]
    return family.replace(out)


@lru_cache(maxsize=8192)
def join_irreducibles(family: SetFamily) -> SetFamily:
    """Members not expressible as a union of two strictly smaller members."""
    require_union_closed(family)
    out = []
    for g in family.members:
        below = [h for h in family.members if h != g and is_subset(h, g)]
        if not any(h | t == g for i, h in enumerate(below) for t in below[i:]):
            out.append(g)
    return family.replace(out)


def is_union_independent(family: SetFamily) -> bool:
    """True iff no member equals a union of other members."""
    for z in family.members:
        parts = [h for h in family.members if h != z and is_subset(h, z)]
        if parts:
            u = 0
            for h in parts:
                u |= h
            if u == z:
                return False
    return True


def cover_pairs(family: SetFamily) -> tuple[CoverPair, ...]:
    """All pairs (f, g) of members with f covered by g inside the family."""
    ms = family.members
    out = []
    for f in ms:
        for g in ms:
            if f == g or not is_subset(f, g):
                continue
            if any(h != f and h != g and is_subset(f, h) and is_subset(h, g) for h in ms):
                continue
            out.append(CoverPair(f, g))
    return tuple(out)


def normalize(family: SetFamily) -> SetFamily:
    """Drop the empty set and shrink the ground set to the union of members."""
    support = 0
    for m in family.members:
        support |= m
    if support == 0:
        raise ValueError("empty family")
    positions = list(bit_indices(support))
    ground = GroundSet.of(len(positions), tuple(family.ground.labels[p] for p in positions))
    remapped = []
    for m in family.members:
        if m == 0:
            continue
        remapped.append(sum(1 << j for j, p in enumerate(positions) if m >> p & 1))
    return SetFamily.of(ground, remapped)


def parse_family(text: str) -> SetFamily:
    """Parse the ``.fam`` text format.

    First content line is ``ground: a,b,c``; each later line is one subset as
    comma-separated labels, with ``{}`` for the empty set.  ``#`` starts a
    comment.
    """
    ground: GroundSet | None = None
    masks: list[Mask] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ground is None:
            if not line.startswith("ground:"):
                raise ValueError("family file must start with a 'ground:' line")
            labels = [x.strip() for x in line[len("ground:") :].split(",") if x.strip()]
            ground = GroundSet.of(len(labels), labels)
            continue
        if line == "{}":
            masks.append(0)
        else:
            masks.append(ground.mask_of(x.strip() for x in line.split(",")))
    if ground is None:
        raise ValueError("family file must start with a 'ground:' line")
    return SetFamily.of(ground, masks)


def format_family(family: SetFamily) -> str:
    """Serialize to the ``.fam`` format; round-trips bit-exactly."""
    lines = ["ground: " + ",".join(family.ground.labels)]
    lines.extend(family.ground.subset_str(m) for m in family.members)
    return "\n".join(lines) + "\n"
