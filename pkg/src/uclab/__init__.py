"""Exact computation with union-closed set families on small ground sets."""

from .setfam import (
    CoverPair,
    GroundSet,
    Mask,
    SetFamily,
    close_under_union,
    cover_pairs,
    extremes,
    format_family,
    ideal,
    is_antichain,
    is_union_closed,
    is_union_independent,
    join_irreducibles,
    normalize,
    parse_family,
    upset,
)
from .rising import (
    BurnsideReport,
    FiberReport,
    InvariantFamily,
    RisingTranscript,
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
from .accounting import (
    ElementBalance,
    HyperAccounts,
    RisingAccounts,
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
    AverageReport,
    IrreducibleBoundReport,
    RemovalTrace,
    average_report,
    frankl_witness,
    hyper_average_report,
    irreducible_bound,
    max_antichain_search_bound,
    removal_trace,
)
from .antichain import (
    AntichainState,
    SymmetricChainDecomposition,
    antichain_state,
    augment_step,
    augmentable_closure,
    augmentation_steps,
    first_upward_level,
    foils,
    is_augmentable,
    maximize_objective,
    middle_layer,
    objective_ceiling,
    shade,
    shadow,
    specular,
    symmetric_chains,
)
from .harness import (
    SuiteConfig,
    VerificationReport,
    enumerate_all_families,
    enumerate_union_closed,
    run_case,
    run_suite,
    sample_union_closed,
)

__version__ = "0.1.0"
