"""Family enumeration/sampling and the statement-verification suite.

Every check is a named pure function over a serialized case payload, so a
failed case can be replayed bit-exactly from the report.  The exhaustive
family space is scanned by an integer counter over all subsets of the
powerset; sampling uses Python's Mersenne Twister (``random.Random``) with
the seed recorded in the config.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator

from . import antichain as ac
from .setfam import (
    GroundSet,
    Mask,
    SetFamily,
    bit_indices,
    close_under_union,
    format_family,
    is_antichain,
    is_subset,
    is_union_closed,
    extremes,
    ideal,
    minimal_of,
    parse_family,
    popcount,
    upset,
)
from .rising import (
    Word,
    _fiber_partition,
    _star,
    all_words,
    burnside_report,
    invariant_family,
    invariant_family_all_words,
    rise,
)
from .accounting import (
    covering_equivalences,
    element_balance,
    guaranteed_pure,
    hyper_accounts,
    hyper_word_sweep,
    local_identities,
    rising_accounts,
    spurious_monotonicity_witness,
)
from .bounds import (
    average_report,
    frankl_witness,
    hyper_average_report,
    irreducible_bound,
    localizer_sigma,
    localizer_sigma_all_words,
    removal_trace,
)

EXHAUSTIVE_MAX = 4
ALL_WORDS_SUITE_MAX = 5


def enumerate_all_families(n: int) -> Iterator[SetFamily]:
    """Every family over the powerset (2^(2^n) of them), the empty one included."""
    if n > EXHAUSTIVE_MAX:
        raise ValueError(f"exhaustive enumeration capped at n <= {EXHAUSTIVE_MAX}")
    ground = GroundSet.of(n)
    for code in range(1 << (1 << n)):
        yield SetFamily.of(ground, (z for z in range(1 << n) if code >> z & 1))


@lru_cache(maxsize=None)
def _union_closed_codes(n: int) -> tuple[int, ...]:
    out = []
    size = 1 << n
    for code in range(1, 1 << size):
        masks = [z for z in range(size) if code >> z & 1]
        ok = True
        for i, f in enumerate(masks):
            for g in masks[i + 1 :]:
                if not code >> (f | g) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(code)
    return tuple(out)


def enumerate_union_closed(n: int, normalize: bool = False) -> Iterator[SetFamily]:
    """Every non-empty union-closed family over the powerset, exactly once.

    With ``normalize`` set, each family is shrunk to the union of its
    members (the all-empty family is skipped and duplicates are dropped).
    """
    if n > EXHAUSTIVE_MAX:
        raise ValueError(f"exhaustive enumeration capped at n <= {EXHAUSTIVE_MAX}")
    ground = GroundSet.of(n)
    seen: set[tuple[int, tuple[Mask, ...]]] = set()
    from .setfam import normalize as _normalize

    for code in _union_closed_codes(n):
        fam = SetFamily.of(ground, (z for z in range(1 << n) if code >> z & 1))
        if normalize:
            if all(m == 0 for m in fam.members):
                continue
            fam = _normalize(fam)
            key = (fam.ground.n, fam.members)
            if key in seen:
                continue
            seen.add(key)
        yield fam


def sample_union_closed(n: int, count: int, seed: int) -> Iterator[SetFamily]:
    """Deterministic stream of union-closed families from random generators."""
    if not 1 <= n <= 16:
        raise ValueError("n must be in 1..16")
    ground = GroundSet.of(n)
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(1, 2 * n)
        masks = [rng.randrange(1, 1 << n) for _ in range(k)]
        yield close_under_union(SetFamily.of(ground, masks))


@lru_cache(maxsize=None)
def _antichain_members(n: int) -> tuple[tuple[Mask, ...], ...]:
    """All antichains over the powerset, one per monotone (upward-closed) family."""
    size = 1 << n
    out = []
    for code in range(1 << size):
        members = [z for z in range(size) if code >> z & 1]
        if any(code >> (z | 1 << i) & 1 == 0 for z in members for i in range(n)):
            continue
        out.append(minimal_of(members))
    return tuple(out)


@dataclass(frozen=True)
class SuiteConfig:
    """Configuration of one verification run."""

    n: int
    mode: str = "exhaustive"
    sample_count: int = 100
    seed: int = 0
    word_mode: str = "all"
    word_sample_count: int = 3
    checks: tuple[str, ...] | None = None
    output: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "sample"):
            raise ValueError("mode must be 'exhaustive' or 'sample'")
        if self.word_mode not in ("all", "sample"):
            raise ValueError("word_mode must be 'all' or 'sample'")
        if self.mode == "exhaustive" and self.n > EXHAUSTIVE_MAX:
            raise ValueError(f"exhaustive mode requires n <= {EXHAUSTIVE_MAX}")
        if self.word_mode == "all" and self.n > ALL_WORDS_SUITE_MAX:
            raise ValueError(f"all-words mode requires n <= {ALL_WORDS_SUITE_MAX}")


def _families(cfg: SuiteConfig) -> Iterator[SetFamily]:
    if cfg.mode == "exhaustive":
        yield from enumerate_union_closed(cfg.n)
    else:
        yield from sample_union_closed(cfg.n, cfg.sample_count, cfg.seed)


def _words_for(cfg: SuiteConfig, fam_text: str) -> list[str]:
    ground = parse_family(fam_text).ground
    if cfg.word_mode == "all":
        return [w.labels(ground) for w in all_words(cfg.n)]
    rng = random.Random(f"{cfg.seed}:{fam_text}:words")
    out = []
    for _ in range(cfg.word_sample_count):
        order = list(range(cfg.n))
        rng.shuffle(order)
        out.append(Word(tuple(order)).labels(ground))
    return out


def _local_rng(cfg: SuiteConfig, fam_text: str, tag: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{fam_text}:{tag}")


def _load(payload: dict) -> SetFamily:
    return parse_family(payload["family"])


def _load_word(payload: dict, family: SetFamily) -> Word:
    return Word.from_labels(payload["word"], family.ground)


# ---------------------------------------------------------------------------
# check bodies; each returns None (pass), a failure string, or a finding


def _check_element_balance(payload: dict):
    family = _load(payload)
    for a in range(family.ground.n):
        element_balance(family, a)


def _check_star_criterion(payload: dict):
    family = _load(payload)
    if not family.members:
        return
    mins, _ = extremes(family)
    stays_inside = all(_star(family, z) in family for z in upset(mins).members)
    assert stays_inside == is_union_closed(family), "star-image criterion"


def _check_rising_core(payload: dict):
    family = _load(payload)
    if not is_union_closed(family):
        raise ValueError("family not union-closed")
    word = _load_word(payload, family)
    n = family.ground.n
    t = rise(family, word)
    for m in t.image.members:
        for i in range(n):
            assert m | 1 << i in t.image, "image must be upward-closed"
    for sec in t.sections:
        assert is_union_closed(sec), "sections of a union-closed family stay union-closed"
        for z in sec.members:
            for f in family.members:
                assert z | f in sec, "sections absorb unions with original members"
    for eta in t.image.members:
        assert _star(family, eta) == t.backward[eta], "star inverts the rising map"
    image_set = set(t.image.members)
    for f in family.members:
        lhs = {t.forward[z] for z in family.members if is_subset(f, z)}
        rhs = {eta for eta in image_set if is_subset(f, eta)}
        assert lhs == rhs, "principal ideals correspond"
    for g in family.members:
        fixed = t.forward[g] == g
        closed_up = all(g | 1 << i in family for i in range(n))
        assert fixed == closed_up, "fixed points are the fully extendable members"
    for i in range(n):
        a = word.order[i]
        bit = 1 << a
        level = {z: t.trajectories[z][i] for z in family.members}
        for z, zi in level.items():
            for z2, z2i in level.items():
                if z != z2 and zi == z2i | bit:
                    assert z & bit and not t.forward[z2] & bit, "matching property"
    for a in range(n):
        bit = 1 << a
        fwd_with = {t.forward[f] for f in family.with_element(a)}
        for eta in t.image.without_element(a):
            assert eta | bit in fwd_with, "embedding into the risen a-members"


def _check_interval_disjointness(payload: dict):
    family = _load(payload)
    words = [Word.from_labels(w, family.ground) for w in payload["words"]]
    forwards = [rise(family, w).forward for w in words]
    for fwd1 in forwards:
        for fwd2 in forwards:
            for f in family.members:
                for g in family.members:
                    meet_lower = f | g
                    meet_upper = fwd1[f] & fwd2[g]
                    overlap = is_subset(meet_lower, meet_upper)
                    assert overlap == (f == g), "intervals are disjoint exactly off the diagonal"


def _check_orbit_maxfiber(payload: dict):
    family = _load(payload)
    if not is_union_closed(family):
        raise ValueError("family not union-closed")
    n = family.ground.n
    part = _fiber_partition(family)
    mins, _ = extremes(family)
    domain = upset(mins)
    assert sorted(z for masks in part.values() for z in masks) == list(domain.members), (
        "fibers partition the domain"
    )
    if n > ALL_WORDS_SUITE_MAX:
        return
    images: dict[Mask, set[Mask]] = {g: set() for g in family.members}
    intervals: dict[Mask, set[Mask]] = {g: set() for g in family.members}
    for w in all_words(n):
        fwd = rise(family, w).forward
        for g in family.members:
            images[g].add(fwd[g])
            gap = fwd[g] & ~g
            sub = gap
            while True:
                intervals[g].add(g | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & gap
    for g in family.members:
        pool = part[g]
        maxima = {m for m in pool if not any(x != m and is_subset(m, x) for x in pool)}
        assert images[g] == maxima, "orbit equals the maximal fiber"
        assert intervals[g] == set(pool), "fiber is the union of rising intervals"
    fam_inv = invariant_family(family)
    assert fam_inv.family == invariant_family_all_words(family), "two invariant routes agree"


def _check_burnside(payload: dict):
    family = _load(payload)
    report = burnside_report(family)
    assert report.orbit_count == len(family)


def _check_accounting(payload: dict):
    family = _load(payload)
    if not is_union_closed(family):
        raise ValueError("family not union-closed")
    word = _load_word(payload, family)
    rising_accounts(family, word)
    guaranteed_pure(family, word)
    report = local_identities(family, word)
    assert report.ok, "; ".join(report.violations)


def _check_hyper_accounting(payload: dict):
    family = _load(payload)
    if not is_union_closed(family):
        raise ValueError("family not union-closed")
    hyper_accounts(family)
    if family.ground.n <= 5:
        sweep = hyper_word_sweep(family)
        assert sweep.ok, "; ".join(sweep.violations)
        cov = covering_equivalences(family)
        assert cov.ok, "; ".join(cov.violations)


def _check_spurious_monotonicity(payload: dict):
    family = _load(payload)
    small = payload["small"]
    large = payload["large"]
    spurious_monotonicity_witness(family, small, large)


def _check_average_bounds(payload: dict):
    family = _load(payload)
    word = _load_word(payload, family)
    for members in payload["localizers"]:
        localizer = SetFamily.of(family.ground, members)
        average_report(family, localizer, word)


def _check_hyper_average(payload: dict):
    family = _load(payload)
    for members in payload["localizers"]:
        hyper_average_report(family, SetFamily.of(family.ground, members))
    if family.ground.n <= 4:
        mins, _ = extremes(family)
        assert localizer_sigma(family, mins) == localizer_sigma_all_words(family, mins)


def _check_removal_trace(payload: dict):
    family = _load(payload)
    word = _load_word(payload, family)
    removal_trace(family, payload["member"], word)


def _check_irreducible_bound(payload: dict):
    family = _load(payload)
    word = _load_word(payload, family)
    report = irreducible_bound(family, word)
    image = rise(family, word).image
    mins = SetFamily.of(family.ground, minimal_of(image.members))
    # second level of an upset is the first upward level of its minimal antichain
    assert report.second_level == len(ac.first_upward_level(mins))
    assert 2 * len(mins) + len(ac.first_upward_level(mins)) <= report.sperner_bound


def _check_frankl_witness(payload: dict):
    family = _load(payload)
    if family.members == (0,):
        return
    if frankl_witness(family) is None:
        return ("finding", f"no majority element in {payload['family']!r}")


def _check_antichain_objective(payload: dict):
    n = payload["n"]
    ceiling = ac.objective_ceiling(n)
    expected_counts = {1: 3, 2: 6, 3: 20, 4: 168}
    chains = _antichain_members(n)
    assert len(chains) == expected_counts[n], "antichain count equals the Dedekind number"
    ground = GroundSet.of(n)
    hits = 0
    for members in chains:
        family = SetFamily.of(ground, members)
        if not members:
            continue
        state = ac.antichain_state(family)
        assert state.objective <= ceiling
        if state.objective == ceiling:
            hits += 1
        layers = ac.foils(family)
        flat = [m for layer in layers for m in layer.members]
        assert sorted(flat) == list(upset(family).members), "foils partition the upset"
    assert hits >= 1, "the ceiling is attained"
    middle = ac.antichain_state(ac.middle_layer(n))
    assert middle.objective == ceiling


def _check_nabla_properties(payload: dict):
    n = payload["n"]
    ground = GroundSet.of(n)
    chains = [SetFamily.of(ground, ms) for ms in _antichain_members(n) if ms]
    for fam_a in chains:
        up_a = ac.shade(fam_a)
        down_a = ac.shadow(fam_a)
        for m in fam_a.members:
            if popcount(m) > 0:
                assert m in ac.shade(down_a), "members reappear above their shadow"
            if popcount(m) < n:
                assert m in ac.shadow(up_a), "members reappear below their shade"
        bar_a = ac.first_upward_level(fam_a)
        assert set(bar_a.members) <= set(up_a.members)
        for g in up_a.members:
            strictly_below = any(x != g and is_subset(x, g) for x in up_a.members)
            assert (g not in bar_a) == strictly_below
    for fam_a in chains:
        for fam_b in chains:
            union = set(fam_a.members) | set(fam_b.members)
            merged = SetFamily.of(ground, union)
            assert set(ac.shade(merged).members) == set(ac.shade(fam_a).members) | set(
                ac.shade(fam_b).members
            )
            assert set(ac.shadow(merged).members) == set(ac.shadow(fam_a).members) | set(
                ac.shadow(fam_b).members
            )
            if set(fam_a.members) <= set(fam_b.members):
                bar_b = ac.first_upward_level(fam_b)
                for g in ac.shade(fam_a).members:
                    assert any(is_subset(gp, g) for gp in bar_b.members)
                diff = SetFamily.of(ground, set(fam_b.members) - set(fam_a.members))
                if diff.members and all(
                    any(is_subset(gp, g) for gp in ac.shade(diff).members)
                    for g in ac.shade(fam_a).members
                ):
                    assert ac.first_upward_level(diff) == ac.first_upward_level(fam_b)
            if is_antichain(merged) and len(merged) == len(fam_a) + len(fam_b):
                bar_a = ac.first_upward_level(fam_a)
                bar_b = ac.first_upward_level(fam_b)
                if not any(
                    gp != g and is_subset(gp, g)
                    for g in bar_a.members
                    for gp in bar_b.members
                ):
                    assert set(bar_a.members) <= set(ac.first_upward_level(merged).members)


def _check_normalized_matching(payload: dict):
    n = payload["n"]
    ground = GroundSet.of(n)
    for k in range(n + 1):
        level = [m for m in range(1 << n) if popcount(m) == k]
        for code in range(1, 1 << len(level)):
            chosen = SetFamily.of(ground, (m for i, m in enumerate(level) if code >> i & 1))
            if 2 * k < n:
                assert len(ac.shade(chosen)) >= len(chosen)
            if 2 * k > n:
                assert len(ac.shadow(chosen)) >= len(chosen)


def _check_augmentation(payload: dict):
    n = payload["n"]
    ground = GroundSet.of(n)
    seeds = [
        SetFamily.of(ground, [ground.full]),
        SetFamily.of(ground, [0]),
        ac.middle_layer(n),
    ]
    rng = random.Random(payload["seed"])
    for _ in range(3):
        pool = [m for m in range(1 << n) if rng.random() < 0.3]
        members = minimal_of(pool)
        if members:
            seeds.append(SetFamily.of(ground, members))
    for seed_family in seeds:
        last = None
        steps = 0
        for tag, state in ac.augmentation_steps(n, seed_family):
            assert is_antichain(state.antichain)
            if last is not None:
                assert state.objective >= last.objective
                if tag == "up":
                    assert state.min_len > last.min_len
                if tag == "down":
                    assert state.max_len < last.max_len
            last = state
            steps += 1
            assert steps <= 4 * n + 4, "augmentation must terminate quickly"
        assert last is not None
        assert n // 2 >= last.max_len >= last.min_len >= n // 2 - 1
        assert last.objective <= ac.objective_ceiling(n)
    assert ac.maximize_objective(n).objective == ac.objective_ceiling(n)


def _check_scd(payload: dict):
    n = payload["n"]
    d = ac.symmetric_chains(n)
    seen: set[Mask] = set()
    for chain in d.chains:
        sizes = [popcount(z) for z in chain]
        assert sizes[0] + sizes[-1] == n
        assert all(b == a + 1 for a, b in zip(sizes, sizes[1:]))
        for a, b in zip(chain, chain[1:]):
            assert is_subset(a, b)
        assert not seen & set(chain)
        seen.update(chain)
    assert len(seen) == 1 << n, "chains partition the powerset"
    for z in range(1 << n):
        mate = ac.specular(d, z)
        assert popcount(z) + popcount(mate) == n
        assert ac.specular(d, mate) == z
        if 2 * popcount(z) < n:
            assert is_subset(z, mate) and z != mate
    for k in range(n // 2):
        level = [z for z in range(1 << n) if popcount(z) == k]
        mates = {ac.specular(d, z) for z in level}
        assert len(mates) == len(level), "specular is injective level-to-level"


# ---------------------------------------------------------------------------
# case generation


def _uc_cases(cfg: SuiteConfig) -> Iterator[dict]:
    for fam in _families(cfg):
        yield {"family": format_family(fam)}


def _uc_word_cases(cfg: SuiteConfig) -> Iterator[dict]:
    for fam in _families(cfg):
        text = format_family(fam)
        for word in _words_for(cfg, text):
            yield {"family": text, "word": word}


def _all_family_cases(cfg: SuiteConfig) -> Iterator[dict]:
    n = min(cfg.n, 3)
    for fam in enumerate_all_families(n):
        yield {"family": format_family(fam)}


def _interval_cases(cfg: SuiteConfig) -> Iterator[dict]:
    for fam in _families(cfg):
        text = format_family(fam)
        if cfg.n <= 3 and cfg.word_mode == "all":
            words = [w.labels(fam.ground) for w in all_words(cfg.n)]
        else:
            words = _words_for(cfg, text)
        yield {"family": text, "words": words}


def _monotonicity_cases(cfg: SuiteConfig) -> Iterator[dict]:
    for fam in _families(cfg):
        text = format_family(fam)
        pairs = [
            (f, g)
            for f in fam.members
            for g in fam.members
            if is_subset(f, g)
        ]
        rng = _local_rng(cfg, text, "pairs")
        if len(pairs) > 3:
            pairs = rng.sample(pairs, 3)
        for f, g in pairs:
            yield {"family": text, "small": f, "large": g}


def _localizer_cases(cfg: SuiteConfig, with_word: bool) -> Iterator[dict]:
    for fam in _families(cfg):
        if fam.members == (0,):
            continue
        text = format_family(fam)
        mins, _ = extremes(fam)
        localizers = [list(mins.members)]
        rng = _local_rng(cfg, text, "localizers")
        for _ in range(5):
            picked = [m for m in fam.members if rng.random() < 0.5]
            members = minimal_of(picked)
            if members:
                localizers.append(list(members))
        if with_word:
            for word in _words_for(cfg, text):
                yield {"family": text, "word": word, "localizers": localizers}
        else:
            yield {"family": text, "localizers": localizers}


def _removal_cases(cfg: SuiteConfig) -> Iterator[dict]:
    if cfg.mode == "exhaustive" and cfg.n <= 3:
        stream: Iterable[SetFamily] = enumerate_all_families(cfg.n)
    else:
        stream = _families(cfg)
    for fam in stream:
        if len(fam) < 2:
            continue
        text = format_family(fam)
        words = _words_for(cfg, text)
        if cfg.mode == "exhaustive":
            members = fam.members
        else:
            rng = _local_rng(cfg, text, "removal")
            members = (rng.choice(fam.members),)
        for m in members:
            for word in words:
                yield {"family": text, "member": m, "word": word}


def _ground_case(cfg: SuiteConfig) -> Iterator[dict]:
    yield {"n": cfg.n}


def _ground_case_max4(cfg: SuiteConfig) -> Iterator[dict]:
    if cfg.n <= 4:
        yield {"n": cfg.n}


def _ground_case_max5(cfg: SuiteConfig) -> Iterator[dict]:
    if cfg.n <= 5:
        yield {"n": cfg.n}


def _ground_case_even(cfg: SuiteConfig) -> Iterator[dict]:
    if cfg.n % 2 == 0 and 2 <= cfg.n <= ac.MAX_OBJECTIVE_GROUND:
        yield {"n": cfg.n, "seed": cfg.seed}


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    cases: Callable[[SuiteConfig], Iterator[dict]]
    run: Callable[[dict], object]


CHECKS: dict[str, Check] = {
    c.name: c
    for c in (
        Check(
            "element-balance",
            "per-element membership balance for arbitrary families",
            _all_family_cases,
            _check_element_balance,
        ),
        Check(
            "star-criterion",
            "union-closedness via the star operator image",
            _all_family_cases,
            _check_star_criterion,
        ),
        Check(
            "rising-core",
            "image, sections, inverse, ideals, fixed points, matching, embedding",
            _uc_word_cases,
            _check_rising_core,
        ),
        Check(
            "interval-disjointness",
            "rising intervals of distinct members never overlap",
            _interval_cases,
            _check_interval_disjointness,
        ),
        Check(
            "orbit-maxfiber",
            "all-words orbit equals the maximal fiber; fibers partition the domain",
            _uc_cases,
            _check_orbit_maxfiber,
        ),
        Check(
            "burnside",
            "word-stabilizer totals and the binomial average inequality",
            _uc_cases,
            _check_burnside,
        ),
        Check(
            "accounting",
            "spurious/pure partitions, balance identities, local forms",
            _uc_word_cases,
            _check_accounting,
        ),
        Check(
            "hyper-accounting",
            "word-free spurious/pure sets, covers, and the sandwich",
            _uc_cases,
            _check_hyper_accounting,
        ),
        Check(
            "spurious-monotonicity",
            "witness words for nested members",
            _monotonicity_cases,
            _check_spurious_monotonicity,
        ),
        Check(
            "average-bounds",
            "all localized-average lower bounds and their attainment cases",
            lambda cfg: _localizer_cases(cfg, with_word=True),
            _check_average_bounds,
        ),
        Check(
            "hyper-average",
            "word-free average bound, cover rewriting, pure floor",
            lambda cfg: _localizer_cases(cfg, with_word=False),
            _check_hyper_average,
        ),
        Check(
            "removal-trace",
            "lockstep removal traces and the irreducible swap cases",
            _removal_cases,
            _check_removal_trace,
        ),
        Check(
            "irreducible-bound",
            "join-irreducible count against the two-level and binomial bounds",
            _uc_word_cases,
            _check_irreducible_bound,
        ),
        Check(
            "frankl-witness",
            "majority element existence (absence is a finding)",
            _uc_cases,
            _check_frankl_witness,
        ),
        Check(
            "antichain-objective",
            "objective ceiling over every antichain, with witnesses and foils",
            _ground_case_max4,
            _check_antichain_objective,
        ),
        Check(
            "nabla-properties",
            "shade/shadow identities over antichain pairs",
            _ground_case_max4,
            _check_nabla_properties,
        ),
        Check(
            "normalized-matching",
            "level families grow toward the middle",
            _ground_case_max5,
            _check_normalized_matching,
        ),
        Check(
            "augmentation",
            "augmenting maps are sound and terminate at the ceiling",
            _ground_case_even,
            _check_augmentation,
        ),
        Check(
            "scd",
            "symmetric chains partition the powerset; specular involution",
            _ground_case,
            _check_scd,
        ),
    )
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    cases: int
    failures: int
    seconds: float
    first_failure: str | None = None
    first_counterexample: dict | None = None


@dataclass(frozen=True)
class VerificationReport:
    schema: int
    config: dict
    results: tuple[CheckResult, ...]
    findings: tuple[str, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return all(r.failures == 0 for r in self.results)

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "config": self.config,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "findings": list(self.findings),
            "checks": [
                {
                    "name": r.name,
                    "cases": r.cases,
                    "failures": r.failures,
                    "seconds": round(r.seconds, 3),
                    "first_failure": r.first_failure,
                    "first_counterexample": r.first_counterexample,
                }
                for r in self.results
            ],
        }


def run_case(check_name: str, payload: dict) -> object:
    """Run one named check on one payload; returns None, a failure string, or a finding."""
    check = CHECKS[check_name]
    try:
        return check.run(payload)
    except AssertionError as exc:
        return f"assertion failed: {exc}"
    except (ValueError, KeyError) as exc:
        return f"error: {exc}"


def _run_pair(item: tuple[str, dict]) -> object:
    return run_case(item[0], item[1])


def run_suite(cfg: SuiteConfig, case_overrides: dict[str, list[dict]] | None = None) -> VerificationReport:
    """Execute the selected checks and assemble the report.

    ``case_overrides`` replaces the generated cases of a check, which is how
    counterexamples are replayed and error paths exercised.
    """
    names = cfg.checks if cfg.checks is not None else tuple(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check id(s): {', '.join(unknown)}")
    started = time.perf_counter()
    results = []
    findings: list[str] = []
    for name in names:
        check = CHECKS[name]
        if case_overrides and name in case_overrides:
            cases = list(case_overrides[name])
        else:
            cases = list(check.cases(cfg))
        t0 = time.perf_counter()
        failures = 0
        first_failure = None
        first_counterexample = None
        if cfg.workers > 1 and len(cases) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                outcomes = list(
                    pool.map(_run_pair, [(name, c) for c in cases], chunksize=64)
                )
        else:
            outcomes = [run_case(name, c) for c in cases]
        for payload, outcome in zip(cases, outcomes):
            if outcome is None:
                continue
            if isinstance(outcome, tuple) and outcome and outcome[0] == "finding":
                findings.append(outcome[1])
                continue
            failures += 1
            if first_failure is None:
                first_failure = str(outcome)
                first_counterexample = payload
        results.append(
            CheckResult(
                name=name,
                cases=len(cases),
                failures=failures,
                seconds=time.perf_counter() - t0,
                first_failure=first_failure,
                first_counterexample=first_counterexample,
            )
        )
    report = VerificationReport(
        schema=1,
        config={
            "n": cfg.n,
            "mode": cfg.mode,
            "sample_count": cfg.sample_count,
            "seed": cfg.seed,
            "word_mode": cfg.word_mode,
            "word_sample_count": cfg.word_sample_count,
            "checks": list(names),
            "workers": cfg.workers,
        },
        results=tuple(results),
        findings=tuple(findings),
        seconds=time.perf_counter() - started,
    )
    if cfg.output:
        with open(cfg.output, "w") as fh:
            json.dump(report.to_json(), fh, indent=2)
            fh.write("\n")
    return report
