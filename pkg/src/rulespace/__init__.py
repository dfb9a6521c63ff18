"""Analysis of binary generating rules with memory.

A rule with memory ``mu`` maps each window of the mu most recent binary
symbols to the next symbol; iterating it from an initial window drives a
deterministic walk on 2^mu states that always ends in a cycle.  This
package represents such rules, detects the maximal-period (de Bruijn)
ones, prunes the doubly-exponential rule space with structural filters,
tabulates census statistics, and trains a small neural classifier that
screens feasible rules before exact verification.
"""

from .errors import (
    ArityError,
    CapacityError,
    DataError,
    NotDeBruijnError,
    NotFoundError,
    RangeError,
    RuleSpaceError,
    StructureError,
)
from .rulecore import (
    MU_MAX,
    OrbitReport,
    RuleTable,
    StateWord,
    apply_rule,
    check_mu,
    detect_orbit,
    format_rule,
    generate_sequence,
    next_state,
    parse_rule,
    rule_from_decimal,
    total_configuration_count,
)
from .debruijn import (
    DeBruijnSequence,
    canonical_rotation,
    debruijn_count,
    export_state_graph,
    granddaddy,
    is_debruijn_rule,
    rule_of_sequence,
    sequence_of_rule,
    verify_debruijn_sequence,
)
from .feasibility import (
    ConstraintPair,
    FeasibilityProfile,
    boundary_ok,
    constrained_pair,
    count_feasible,
    enumerate_feasible,
    factorize_rule,
    is_evil_odd,
    is_feasible,
    mirror_rule,
    pair_ok,
    phi,
    sample_feasible,
    symmetry_ok,
)
from .census import (
    PeriodHistogram,
    ReductionRow,
    calibrate_policies,
    period_histogram,
    reduction_table,
)
from .classifier import (
    LabeledDataset,
    MetricsReport,
    Model,
    NetworkConfig,
    VerificationReport,
    build_dataset,
    evaluate,
    extract_features,
    load_dataset,
    load_model,
    predict,
    save_dataset,
    save_model,
    split_dataset,
    train,
    verify_predictions,
)

__version__ = "0.1.0"
