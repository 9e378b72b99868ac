"""Waterfall splitting of amounts over ordered capped tranches.

The closed-form split (:func:`allocate`), its step-by-step twin
(:func:`allocate_sequential`), and the difference decomposition of two splits
under dominance (:func:`decompose_difference`).
"""
from .core import (
    Allocation,
    CapSchedule,
    CapsplitError,
    EmptySchedule,
    InvertedInterval,
    NonNegativityViolation,
    NumericMode,
    Pivot,
    PivotKind,
    Scalar,
    allocate,
    as_schedule,
    classify_pivot,
    positive_part,
    split_interval,
)
from .decomposition import (
    DecompositionMode,
    DiffDecomposition,
    DominancePair,
    Hypothesis,
    IdentityFailure,
    LengthMismatch,
    NegativePsi,
    PreconditionViolated,
    Violation,
    check_dominance,
    decompose_difference,
    decompose_via_psi,
)
from .oracle import (
    FuzzConfig,
    dominance_pair_from,
    allocate_sequential,
    generate_case,
    generate_dominance_pair,
    generate_equal_caps_pair,
    generate_violating_pair,
)

__version__ = "0.1.0"
