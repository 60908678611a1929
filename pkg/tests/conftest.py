"""Shared strategies and independent oracles for the test suite.

The oracles here re-derive expected values from the raw definitions
(frozensets of label sets, pairwise-union fixpoints, full powerset scans)
and never route through the library's own kernels.
"""

from __future__ import annotations

from hypothesis import strategies as st

from uclab.setfam import GroundSet, SetFamily, close_under_union


def oracle_close(subsets: set[frozenset[str]]) -> set[frozenset[str]]:
    """Pairwise unions to a fixpoint."""
    out = set(subsets)
    while True:
        fresh = {a | b for a in out for b in out} - out
        if not fresh:
            return out
        out |= fresh


def oracle_rise_forward(
    subsets: list[frozenset[str]], word: list[str]
) -> dict[frozenset[str], frozenset[str]]:
    """Step-by-step simulation of the rising definition on label sets."""
    cur = list(subsets)
    for a in word:
        section = set(cur)
        cur = [z | {a} if z | {a} not in section else z for z in cur]
    return dict(zip(subsets, cur))


def as_label_sets(family: SetFamily) -> set[frozenset[str]]:
    labels = family.ground.labels
    return {
        frozenset(labels[i] for i in range(family.ground.n) if m >> i & 1)
        for m in family.members
    }


@st.composite
def families(draw, min_n: int = 1, max_n: int = 4, closed: bool = False) -> SetFamily:
    n = draw(st.integers(min_n, max_n))
    ground = GroundSet.of(n)
    members = draw(
        st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=min(1 << n, 10))
    )
    family = SetFamily.of(ground, members)
    if closed:
        family = close_under_union(family)
    return family
