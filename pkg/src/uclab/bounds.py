"""Lower bounds on localized average length, removal traces, and the
join-irreducible counting bound.

All rational bounds are exact fractions; the one bound with a log term is
verified by integer cross-multiplication (2^L * U^M against M^M), never by
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, log2
from typing import Literal

from .setfam import (
    Mask,
    SetFamily,
    bit_indices,
    is_antichain,
    is_subset,
    is_union_closed,
    extremes,
    ideal,
    join_irreducibles,
    maximal_of,
    minimal_of,
    popcount,
    require_union_closed,
    upset,
)
from .rising import Word, _fiber_partition, all_words, has_member_below, rise
from .accounting import hyper_accounts, rising_accounts


def frankl_witness(family: SetFamily) -> int | None:
    """Smallest element contained in at least half the members, if any."""
    if not family.members or family.members == (0,):
        raise ValueError("family has no usable members")
    require_union_closed(family)
    for a in range(family.ground.n):
        if 2 * len(family.with_element(a)) >= len(family):
            return a
    return None


@dataclass(frozen=True)
class AverageReport:
    """Exact localized-average bounds for one family, localizer, and word.

    ``bound_general`` is a float for display only; ``general_holds`` and
    ``general_attained`` carry the exact integer-arithmetic verdicts.
    """

    localizer: SetFamily
    ideal_size: int
    length_sum: int
    average: Fraction
    bound_partition: Fraction
    partition_attained: bool
    bound_general: float
    general_holds: bool
    general_attained: bool
    bound_max_antichain: Fraction | None
    bound_invariant: Fraction
    bound_hyper: Fraction
    sigma_s: int
    reimer_holds: bool | None


def _is_maximal_antichain(masks: tuple[Mask, ...], n: int) -> bool:
    """True when every mask of the powerset is comparable to some member."""
    for z in range(1 << n):
        if not any(is_subset(m, z) or is_subset(z, m) for m in masks):
            return False
    return True


def _general_cmp(length_sum: int, m: int, n: int, pure_sum: int, up_size: int) -> tuple[bool, bool]:
    """Exact comparison of the log-term bound, clearing denominators.

    The bound holds iff L = 2*length_sum - n*m - pure_sum satisfies
    2^L >= (m/up_size)^m, compared as 2^max(L,0) * up_size^m against
    2^max(-L,0) * m^m.
    """
    ell = 2 * length_sum - n * m - pure_sum
    lhs = up_size**m << max(ell, 0)
    rhs = m**m << max(-ell, 0)
    return lhs >= rhs, lhs == rhs


def localizer_sigma(family: SetFamily, localizer: SetFamily) -> int:
    """Largest fiber-maximum overshoot over the localizer members."""
    part = _fiber_partition(family)
    best = 0
    for f in localizer.members:
        for eta in maximal_of(part[f]):
            best = max(best, popcount(eta & ~f))
    return best


def localizer_sigma_all_words(family: SetFamily, localizer: SetFamily) -> int:
    """All-words oracle for :func:`localizer_sigma`; capped at n <= 5."""
    n = family.ground.n
    if n > 5:
        raise ValueError("all-words sigma sweep capped at n <= 5")
    best = 0
    for w in all_words(n):
        fwd = rise(family, w).forward
        for f in localizer.members:
            best = max(best, popcount(fwd[f] & ~f))
    return best


def _validated_localizer(family: SetFamily, localizer: SetFamily) -> None:
    if not localizer.members:
        raise ValueError("localizer must be non-empty")
    if not all(m in family for m in localizer.members):
        raise ValueError("localizer must be a subfamily")
    if not is_antichain(localizer):
        raise ValueError("localizer must be an antichain")


def average_report(family: SetFamily, localizer: SetFamily, word: Word) -> AverageReport:
    require_union_closed(family)
    _validated_localizer(family, localizer)
    n = family.ground.n
    localized = ideal(family, localizer)
    m = len(localized)
    length_sum = sum(popcount(f) for f in localized.members)
    average = Fraction(length_sum, m)

    accounts = rising_accounts(family, word)
    up = upset(localizer)
    up_size = len(up)
    pure_sum = sum(
        len([e for e in accounts.pure_by_element[a].members if e in up])
        for a in range(n)
    )
    spur_sum = sum(
        len([e for e in accounts.spurious_by_element[a].members if e in up])
        for a in range(n)
    )

    mins, _ = extremes(family)
    at_min = localizer.members == mins.members
    upward_closed = family.members == upset(mins).members

    bound_partition = Fraction(n, 2) + Fraction(pure_sum - spur_sum, 2 * m)
    assert bound_partition <= average
    partition_attained = bound_partition == average
    if at_min:
        assert partition_attained, "partition bound is attained at the minimal localizer"

    general_holds, general_attained = _general_cmp(length_sum, m, n, pure_sum, up_size)
    assert general_holds
    if at_min and upward_closed:
        assert general_attained
    bound_general = n / 2 + pure_sum / (2 * m) - log2(up_size / m) / 2

    bound_max_antichain = None
    # the uniform-size bound needs non-empty minimal members: with the empty
    # set in the family the comparability dichotomy behind it degenerates
    if 0 not in mins and _is_maximal_antichain(mins.members, n):
        k = max(popcount(g) for g in mins.members)
        bound_max_antichain = Fraction(n - k, 2) + Fraction(pure_sum, 2 * m)
        assert bound_max_antichain <= average

    sigma_s = localizer_sigma(family, localizer)
    bound_invariant = Fraction(n - sigma_s, 2) + Fraction(pure_sum, 2 * m)
    assert bound_invariant <= average

    bound_hyper = _hyper_bound(family, localizer, localized)
    assert bound_hyper <= average
    if at_min and upward_closed:
        assert bound_hyper == average

    reimer_holds = None
    if at_min:
        # average >= log2(|family|)/2, cleared to 2^(2*length_sum) >= |F|^|F|
        reimer_holds = (1 << (2 * length_sum)) >= len(family) ** len(family)
        assert reimer_holds
    return AverageReport(
        localizer=localizer,
        ideal_size=m,
        length_sum=length_sum,
        average=average,
        bound_partition=bound_partition,
        partition_attained=partition_attained,
        bound_general=bound_general,
        general_holds=general_holds,
        general_attained=general_attained,
        bound_max_antichain=bound_max_antichain,
        bound_invariant=bound_invariant,
        bound_hyper=bound_hyper,
        sigma_s=sigma_s,
        reimer_holds=reimer_holds,
    )


def _hyper_bound(family: SetFamily, localizer: SetFamily, localized: SetFamily) -> Fraction:
    n = family.ground.n
    m = len(localized)
    acc = hyper_accounts(family)
    up = upset(localizer)
    spur_total = sum(popcount(acc.hyper_spurious_of[f]) for f in localized.members)
    pure_total = sum(
        len([g for g in acc.hyper_pure_by_element[a].members if g in up])
        for a in range(n)
    )
    return Fraction(n, 2) - Fraction(spur_total, 2 * m) + Fraction(pure_total, 2 * m)


def hyper_average_report(family: SetFamily, localizer: SetFamily) -> AverageReport:
    """Average report plus the word-free bound identities.

    Word-dependent fields use the identity word.  The cover-union rewriting
    of the bound and the floor on the pure term are asserted here.
    """
    report = average_report(family, localizer, Word.identity(family.ground.n))
    n = family.ground.n
    localized = ideal(family, localizer)
    m = len(localized)
    acc = hyper_accounts(family)
    up = upset(localizer)

    spur_total = sum(popcount(acc.hyper_spurious_of[f]) for f in localized.members)
    pure_total = sum(
        len([g for g in acc.hyper_pure_by_element[a].members if g in up])
        for a in range(n)
    )
    # rewriting through cover unions (member joined in, so cover-less members work)
    joined_total = 0
    strict_total = 0
    for f in localized.members:
        joined = f
        strict = 0
        for g in family.members:
            if f != g and is_subset(f, g):
                if not any(
                    h != f and h != g and is_subset(f, h) and is_subset(h, g)
                    for h in family.members
                ):
                    joined |= g
                    strict |= g
        joined_total += popcount(joined)
        strict_total += popcount(strict)
    assert Fraction(n * m - spur_total, 2 * m) == Fraction(joined_total, 2 * m)
    rewritten = Fraction(strict_total, 2 * m) + Fraction(pure_total, 2 * m)
    assert rewritten <= report.bound_hyper

    floor = sum(
        len([a for a in bit_indices(g) if not has_member_below(family, g & ~(1 << a))])
        for g in localized.members
    )
    assert pure_total >= floor
    return report


def max_antichain_search_bound(
    family: SetFamily, localizer: SetFamily, word: Word
) -> Fraction | None:
    """Best uniform-size bound over maximal antichains inside the family.

    Searches every antichain of the family that is maximal in the powerset
    (ground size capped at 4) and uses the smallest achievable size cap.
    """
    require_union_closed(family)
    _validated_localizer(family, localizer)
    n = family.ground.n
    if n > 4:
        raise ValueError("maximal-antichain search capped at n <= 4")
    members = tuple(m for m in family.members if m)
    best_k = None
    for code in range(1, 1 << len(members)):
        picked = tuple(m for i, m in enumerate(members) if code >> i & 1)
        chosen = SetFamily.of(family.ground, picked)
        if not is_antichain(chosen) or not _is_maximal_antichain(chosen.members, n):
            continue
        k = max(popcount(g) for g in chosen.members)
        best_k = k if best_k is None else min(best_k, k)
    if best_k is None:
        return None
    localized = ideal(family, localizer)
    m = len(localized)
    accounts = rising_accounts(family, word)
    up = upset(localizer)
    pure_sum = sum(
        len([e for e in accounts.pure_by_element[a].members if e in up])
        for a in range(n)
    )
    bound = Fraction(n - best_k, 2) + Fraction(pure_sum, 2 * m)
    average = Fraction(sum(popcount(f) for f in localized.members), m)
    assert bound <= average
    return bound


CaseTag = Literal["no-swap", "bar-swap"]


@dataclass(frozen=True)
class RemovalTrace:
    """Lockstep record of rising a family and the family minus one member.

    The swap chain m_0..m_k and the swap step indices describe exactly where
    the two processes diverge; the missing elements are the per-section
    difference.  ``case`` is set only for irreducible members of
    union-closed families.
    """

    removed: Mask
    word: Word
    swap_chain: tuple[Mask, ...]
    swap_indices: tuple[int, ...]
    missing: tuple[Mask, ...]
    case: CaseTag | None
    base_image: SetFamily
    reduced_image: SetFamily


def removal_trace(family: SetFamily, removed: Mask, word: Word) -> RemovalTrace:
    if removed not in family:
        raise ValueError("removed mask must be a family member")
    if len(family) < 2:
        raise ValueError("removal would leave an empty family")
    n = family.ground.n
    reduced_family = family.replace(m for m in family.members if m != removed)
    base = rise(family, word)
    reduced = rise(reduced_family, word)

    missing = []
    for full_sec, red_sec in zip(base.sections, reduced.sections):
        diff = set(full_sec.members) - set(red_sec.members)
        assert len(diff) == 1, "reduced section differs by exactly one element"
        missing.append(diff.pop())

    chain = [removed]
    indices = []
    red_at = {
        m: reduced.trajectories[m] for m in reduced_family.members
    }
    for i in range(n):
        a = word.order[i]
        bit = 1 << a
        mu = missing[i]
        if mu & bit and mu & ~bit in reduced.sections[i]:
            swapper = next(
                m for m, t in red_at.items() if t[i] == mu & ~bit
            )
            chain.append(swapper)
            indices.append(i + 1)

    k = len(chain) - 1
    for j in range(1, k + 1):
        assert reduced.forward[chain[j]] == base.forward[chain[j - 1]]
        step_elem = word.order[indices[j - 1] - 1]
        assert chain[j - 1] & (1 << step_elem)
        assert not base.forward[chain[j]] & (1 << step_elem)
    chain_set = set(chain)
    for z in reduced_family.members:
        if z not in chain_set:
            assert reduced.forward[z] == base.forward[z]
    dropped = base.forward[chain[k]]
    assert missing[-1] == dropped
    assert set(reduced.image.members) == set(base.image.members) - {dropped}
    assert dropped in minimal_of(base.image.members)

    case: CaseTag | None = None
    if is_union_closed(family) and removed in join_irreducibles(family):
        assert k <= 1, "removing an irreducible swaps at most once"
        if k == 0:
            case = "no-swap"
            assert base.forward[removed] in minimal_of(base.image.members)
        else:
            case = "bar-swap"
            strictly_below = [f for f in family.members if f != removed and is_subset(f, removed)]
            assert strictly_below, "a swap needs members strictly below the removed one"
            bar = 0
            for f in strictly_below:
                bar |= f
            assert chain[1] == bar
            assert reduced.forward[bar] == base.forward[removed]
            assert base.forward[bar] in minimal_of(base.image.members)

    return RemovalTrace(
        removed=removed,
        word=word,
        swap_chain=tuple(chain),
        swap_indices=tuple(indices),
        missing=tuple(missing),
        case=case,
        base_image=base.image,
        reduced_image=reduced.image,
    )


@dataclass(frozen=True)
class IrreducibleBoundReport:
    j_count: int
    min_image: int
    second_level: int
    paper_bound: int
    sperner_bound: int


def irreducible_bound(family: SetFamily, word: Word) -> IrreducibleBoundReport:
    """Join-irreducible count against the two-level image bound and its ceiling."""
    require_union_closed(family)
    n = family.ground.n
    j_count = len(join_irreducibles(family))
    image = rise(family, word).image
    first = minimal_of(image.members)
    remainder = [m for m in image.members if m not in set(first)]
    second = minimal_of(remainder) if remainder else ()
    min_image = len(first)
    second_level = len(second)
    paper_bound = 2 * min_image + second_level
    sperner_bound = 2 * comb(n, n // 2) + comb(n, n // 2 + 1)
    assert j_count <= paper_bound <= sperner_bound
    return IrreducibleBoundReport(
        j_count=j_count,
        min_image=min_image,
        second_level=second_level,
        paper_bound=paper_bound,
        sperner_bound=sperner_bound,
    )
