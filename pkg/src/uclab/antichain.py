"""Shade/shadow machinery, antichain augmentation, and symmetric chains.

The objective 2|A| + |first upward level of A| is maximized over antichains
by the middle layer; the augmenting maps push any antichain into the two
middle levels without ever decreasing the objective.  Symmetric chains come
from the bracket-matching construction and carry the size-complementing
specular involution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Literal

from .setfam import (
    GroundSet,
    Mask,
    SetFamily,
    bit_indices,
    is_antichain,
    is_subset,
    minimal_of,
    popcount,
    upset,
)

MAX_OBJECTIVE_GROUND = 8


def shade(family: SetFamily) -> SetFamily:
    """Level-wise shade: one-element extensions of each member."""
    n = family.ground.n
    out = set()
    for m in family.members:
        for i in range(n):
            if not m >> i & 1:
                out.add(m | 1 << i)
    return family.replace(out)


def shadow(family: SetFamily) -> SetFamily:
    """Level-wise shadow: one-element deletions of each member."""
    out = set()
    for m in family.members:
        for i in bit_indices(m):
            out.add(m & ~(1 << i))
    return family.replace(out)


def _require_antichain(family: SetFamily) -> None:
    if not is_antichain(family):
        raise ValueError("not an antichain")


def first_upward_level(family: SetFamily) -> SetFamily:
    """Minimal elements of the shade of an antichain."""
    _require_antichain(family)
    return family.replace(minimal_of(shade(family).members))


def foils(family: SetFamily, depth: int | None = None) -> list[SetFamily]:
    """Iterated first upward levels, starting from the antichain itself."""
    _require_antichain(family)
    out = [family]
    while out[-1].members and (depth is None or len(out) <= depth):
        out.append(first_upward_level(out[-1]))
    if not out[-1].members:
        out.pop()
    return out


@dataclass(frozen=True)
class AntichainState:
    """An antichain with its first upward level and objective cached."""

    antichain: SetFamily
    first_upward: SetFamily
    objective: int
    min_len: int
    max_len: int
    first_upward_max_len: int


def antichain_state(family: SetFamily) -> AntichainState:
    _require_antichain(family)
    up = family.replace(minimal_of(shade(family).members)) if family.members else family
    assert not set(family.members) & set(up.members)
    sizes = [popcount(m) for m in family.members]
    return AntichainState(
        antichain=family,
        first_upward=up,
        objective=2 * len(family) + len(up),
        min_len=min(sizes) if sizes else 0,
        max_len=max(sizes) if sizes else 0,
        first_upward_max_len=max((popcount(m) for m in up.members), default=0),
    )


def _level(family: SetFamily, size: int) -> tuple[Mask, ...]:
    return tuple(m for m in family.members if popcount(m) == size)


def _augmentable_violations(family: SetFamily) -> Iterator[tuple[Mask, int]]:
    """Pairs (h, a) with h a longest first-upward member whose a-deletion is missing."""
    state = antichain_state(family)
    k = state.first_upward_max_len
    if not state.first_upward.members:
        return
    if any(popcount(m) >= k for m in family.members):
        return
    for h in sorted(_level(state.first_upward, k)):
        for a in bit_indices(h):
            if h & ~(1 << a) not in family:
                yield h, a


def is_augmentable(family: SetFamily) -> bool:
    _require_antichain(family)
    return next(_augmentable_violations(family), None) is None


def augmentable_closure(family: SetFamily) -> AntichainState:
    """Add missing deletions of longest first-upward members until none remain.

    The lexicographically smallest violating pair is fixed first; the result
    keeps both length norms and never decreases the objective.
    """
    if not family.members:
        raise ValueError("empty family")
    _require_antichain(family)
    state = antichain_state(family)
    while True:
        hit = next(_augmentable_violations(state.antichain), None)
        if hit is None:
            return state
        h, a = hit
        grown = antichain_state(state.antichain.replace((*state.antichain.members, h & ~(1 << a))))
        assert grown.objective >= state.objective
        assert grown.min_len == state.min_len and grown.max_len == state.max_len
        state = grown


Direction = Literal["up", "down"]


def augment_step(state: AntichainState, direction: Direction) -> AntichainState:
    """One application of the upward- or lower-augmenting map.

    Identity outside its case rows; when it acts, the objective never drops,
    the up map strictly raises the minimum length and the down map strictly
    lowers the maximum.
    """
    family = state.antichain
    n = family.ground.n
    if n % 2:
        raise ValueError("augmenting maps require an even ground size")
    if not is_augmentable(family):
        raise ValueError("antichain is not augmentable")
    s, kp, k = state.min_len, state.max_len, state.first_upward_max_len
    target = None
    if direction == "up":
        if s < n // 2 - 1:
            target, grow = s, True
    elif direction == "down":
        if kp >= k and kp >= n // 2 + 1:
            target, grow = kp, False
        elif kp < k and k > n // 2 + 1:
            assert kp == k - 1, "augmentability pins the top level under the first upward level"
            target, grow = k - 1, False
    else:
        raise ValueError("direction must be 'up' or 'down'")
    if target is None:
        return state
    level = _level(family, target)
    moved = shade(family.replace(level)) if grow else shadow(family.replace(level))
    rest = [m for m in family.members if popcount(m) != target]
    result = antichain_state(family.replace((*rest, *moved.members)))
    assert result.objective >= state.objective
    if result.antichain != family:
        if direction == "up":
            assert result.min_len > state.min_len
        else:
            assert result.max_len < state.max_len
    return result


def augmentation_steps(
    n: int, seed: SetFamily | None = None
) -> Iterator[tuple[str, AntichainState]]:
    """The closure/step alternation from a seed antichain, one state per move."""
    if n % 2:
        raise ValueError("augmenting maps require an even ground size")
    ground = seed.ground if seed is not None else GroundSet.of(n)
    if ground.n != n:
        raise ValueError("seed ground size mismatch")
    family = seed if seed is not None else SetFamily.of(ground, [ground.full])
    yield "seed", antichain_state(family)
    state = augmentable_closure(family)
    yield "closure", state
    while True:
        moved = augment_step(state, "up")
        tag = "up"
        if moved.antichain == state.antichain:
            moved = augment_step(state, "down")
            tag = "down"
        if moved.antichain == state.antichain:
            return
        yield tag, moved
        state = augmentable_closure(moved.antichain)
        yield "closure", state


def middle_layer(n: int) -> SetFamily:
    ground = GroundSet.of(n)
    return SetFamily.of(ground, (m for m in range(1 << n) if popcount(m) == n // 2))


def objective_ceiling(n: int) -> int:
    return 2 * comb(n, n // 2) + comb(n, n // 2 + 1)


def maximize_objective(n: int, seed: SetFamily | None = None) -> AntichainState:
    """Run the augmentation loop to a fixpoint in the two middle levels.

    Odd sizes take the direct middle-layer route.  The default (full-set)
    seed descends to the middle layer, where the objective ceiling
    2*C(n, n/2) + C(n, n/2 + 1) is attained.
    """
    if not 2 <= n <= MAX_OBJECTIVE_GROUND:
        raise ValueError(f"n must be in 2..{MAX_OBJECTIVE_GROUND}")
    if n % 2:
        state = antichain_state(middle_layer(n))
        assert state.objective == objective_ceiling(n)
        return state
    state = None
    for _, state in augmentation_steps(n, seed):
        pass
    assert state is not None
    assert n // 2 >= state.max_len >= state.min_len >= n // 2 - 1
    assert state.objective <= objective_ceiling(n)
    return state


@dataclass(frozen=True)
class SymmetricChainDecomposition:
    """Chains partitioning the powerset, each symmetric about n/2."""

    n: int
    chains: tuple[tuple[Mask, ...], ...]
    _position: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index: dict[Mask, tuple[int, int]] = {}
        for ci, chain in enumerate(self.chains):
            for pos, z in enumerate(chain):
                index[z] = (ci, pos)
        object.__setattr__(self, "_position", index)

    def chain_of(self, z: Mask) -> tuple[Mask, ...]:
        ci, _ = self._position[z]
        return self.chains[ci]


def _bracket_unmatched(mask: Mask, n: int) -> tuple[list[int], list[int]]:
    """Unmatched positions scanning members as closers and non-members as openers."""
    stack: list[int] = []
    closers: list[int] = []
    for i in range(n):
        if mask >> i & 1:
            if stack:
                stack.pop()
            else:
                closers.append(i)
        else:
            stack.append(i)
    return closers, stack


def symmetric_chains(n: int) -> SymmetricChainDecomposition:
    """Bracket-matching construction of a symmetric chain decomposition."""
    if not 1 <= n <= 16:
        raise ValueError("n must be in 1..16")
    chains: dict[Mask, tuple[Mask, ...]] = {}
    for z in range(1 << n):
        closers, openers = _bracket_unmatched(z, n)
        assert all(c < o for c in closers for o in openers)
        base = z
        for i in closers:
            base &= ~(1 << i)
        if base not in chains:
            free = closers + openers
            chain = []
            acc = base
            chain.append(acc)
            for i in free:
                acc |= 1 << i
                chain.append(acc)
            chains[base] = tuple(chain)
        assert z in chains[base]
    return SymmetricChainDecomposition(n=n, chains=tuple(chains[b] for b in sorted(chains)))


def specular(decomposition: SymmetricChainDecomposition, z: Mask) -> Mask:
    """The unique same-chain mate of complementary size; an involution."""
    ci, pos = decomposition._position[z]
    chain = decomposition.chains[ci]
    mate = chain[len(chain) - 1 - pos]
    assert popcount(z) + popcount(mate) == decomposition.n
    return mate
