"""Difference of two waterfall splits under dominance.

Given two amounts and two cap schedules of equal length with

* ``x1 >= x2``                                  (x-order)
* ``caps1[i] >= caps2[i]`` for every tranche    (cap-order)
* ``x1 - x2 >= sum(caps1[i] - caps2[i])``       (increment budget)

every term of ``allocate(x1, caps1)`` is at least the matching term of
``allocate(x2, caps2)``, and the absolute term differences add up to exactly
``x1 - x2``. A consequence of the last two conditions, used in the argument
and reported here as a cross-check, is the partial-sum dominance
``x1 - S1_j >= x2 - S2_j`` for every ``j``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

from .core import (
    CapSchedule,
    CapsplitError,
    Scalar,
    allocate,
    as_schedule,
)

__all__ = [
    "Hypothesis",
    "Violation",
    "DecompositionMode",
    "LengthMismatch",
    "PreconditionViolated",
    "IdentityFailure",
    "NegativePsi",
    "DominancePair",
    "DiffDecomposition",
    "check_dominance",
    "decompose_difference",
    "decompose_via_psi",
]


class Hypothesis(enum.Enum):
    X_ORDER = "x_order"
    CAP_ORDER = "cap_order"
    INCREMENT_BUDGET = "increment_budget"
    # implied by CAP_ORDER and INCREMENT_BUDGET; never an independent input
    PARTIAL_SUM = "partial_sum"


class Violation(NamedTuple):
    """A failed inequality ``lhs >= rhs``; ``index`` is 1-based or None."""

    hypothesis: Hypothesis
    index: int | None
    lhs: Scalar
    rhs: Scalar

    def __str__(self):
        where = "" if self.index is None else f"[{self.index}]"
        return f"{self.hypothesis.value}{where}: {self.lhs} < {self.rhs}"


class DecompositionMode(enum.Enum):
    CHECKED = "checked"
    UNCHECKED = "unchecked"


class LengthMismatch(CapsplitError):
    def __init__(self, m1: int, m2: int):
        self.m1, self.m2 = m1, m2
        super().__init__(f"schedules differ in length: {m1} vs {m2}")


class PreconditionViolated(CapsplitError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class IdentityFailure(AssertionError):
    """Raised when a pair passing every precondition still breaks the identity."""


class NegativePsi(CapsplitError):
    def __init__(self, which: str, index: int, value: Scalar):
        self.which, self.index, self.value = which, index, value
        super().__init__(f"{which}[{index}] is negative: {value}")


@dataclass(frozen=True)
class DominancePair:
    x1: Scalar
    schedule1: CapSchedule
    x2: Scalar
    schedule2: CapSchedule

    def __post_init__(self):
        s1, s2 = as_schedule(self.schedule1), as_schedule(self.schedule2)
        if s1.m != s2.m:
            raise LengthMismatch(s1.m, s2.m)
        object.__setattr__(self, "schedule1", s1)
        object.__setattr__(self, "schedule2", s2)

    @property
    def m(self) -> int:
        return self.schedule1.m

    @property
    def status(self) -> dict:
        """Per-hypothesis pass flags, derived partial-sum dominance included."""
        failed = {v.hypothesis for v in check_dominance(self)}
        return {h: h not in failed for h in Hypothesis}


@dataclass(frozen=True)
class DiffDecomposition:
    """Per-term comparison of two splits.

    ``signed_diffs[k]`` is term k of the first split minus term k of the second;
    ``term_diffs`` holds their absolute values and ``total`` their sum.
    """

    term_diffs: tuple
    signed_diffs: tuple
    total: Scalar
    expected: Scalar
    nonneg_certified: bool
    identity_holds: bool
    violations: tuple = ()
    swapped: bool = False
    pair: DominancePair | None = field(default=None, repr=False, compare=False)


def check_dominance(pair: DominancePair) -> list[Violation]:
    """Every failed hypothesis of ``pair``, in a fixed order.

    >>> check_dominance(DominancePair(10, [1, 4], 7, [2, 4]))
    [Violation(hypothesis=<Hypothesis.CAP_ORDER: 'cap_order'>, index=1, lhs=1, rhs=2)]
    """
    s1, s2 = pair.schedule1, pair.schedule2
    gap = pair.x1 - pair.x2
    out = []
    if pair.x1 < pair.x2:
        out.append(Violation(Hypothesis.X_ORDER, None, pair.x1, pair.x2))
    for i, (a, b) in enumerate(zip(s1.caps, s2.caps), start=1):
        if a < b:
            out.append(Violation(Hypothesis.CAP_ORDER, i, a, b))
    increments = [a - b for a, b in zip(s1.caps, s2.caps)]
    budget = sum(increments[1:], increments[0])
    if gap < budget:
        out.append(Violation(Hypothesis.INCREMENT_BUDGET, None, gap, budget))
    for j in range(1, pair.m + 1):
        lhs = pair.x1 - s1.prefix_sums[j]
        rhs = pair.x2 - s2.prefix_sums[j]
        if lhs < rhs:
            out.append(Violation(Hypothesis.PARTIAL_SUM, j, lhs, rhs))
    return out


def decompose_difference(
    pair: DominancePair,
    mode: DecompositionMode = DecompositionMode.CHECKED,
    tolerance: float = 0,
) -> DiffDecomposition:
    """Compare ``allocate(x1, caps1)`` with ``allocate(x2, caps2)`` term by term.

    In ``CHECKED`` mode the hypotheses must hold (else
    :class:`PreconditionViolated`) and the result is certified: every signed
    difference is non-negative and the absolute differences sum to
    ``x1 - x2``. ``UNCHECKED`` mode computes the same quantities for any pair
    and only reports ``identity_holds``.

    ``tolerance`` is an absolute slack for the identity comparison and is
    meant for float inputs; exact inputs should keep the default of zero.
    """
    mode = DecompositionMode(mode)
    violations = tuple(check_dominance(pair))
    if mode is DecompositionMode.CHECKED and violations:
        raise PreconditionViolated(violations)

    t1 = allocate(pair.x1, pair.schedule1).terms
    t2 = allocate(pair.x2, pair.schedule2).terms
    signed = tuple(a - b for a, b in zip(t1, t2))
    absolute = tuple(abs(d) for d in signed)
    total = sum(absolute[1:], absolute[0])
    expected = pair.x1 - pair.x2
    nonneg = all(d >= -tolerance for d in signed)
    holds = abs(total - expected) <= tolerance

    if mode is DecompositionMode.CHECKED and not (nonneg and holds):
        raise IdentityFailure(
            f"identity broken for {pair!r}: diffs={signed!r}, total={total!r}, "
            f"expected={expected!r}"
        )
    return DiffDecomposition(
        term_diffs=absolute,
        signed_diffs=signed,
        total=total,
        expected=expected,
        nonneg_certified=nonneg,
        identity_holds=holds,
        violations=violations,
        pair=pair,
    )


def decompose_via_psi(
    x: Scalar,
    y1: Scalar,
    y2: Scalar,
    psi_at_y1: Sequence[Scalar],
    psi_at_y2: Sequence[Scalar],
    tolerance: float = 0,
) -> DiffDecomposition:
    """Checked decomposition of the pair ``(x + y1, psi(y1))``, ``(x + y2, psi(y2))``.

    ``psi_at_y1`` and ``psi_at_y2`` are the caller's evaluations of the ``m``
    cap functions at the two points. If ``y1 < y2`` the two points are swapped
    first and ``swapped`` is set on the result.
    """
    psi_at_y1, psi_at_y2 = tuple(psi_at_y1), tuple(psi_at_y2)
    if len(psi_at_y1) != len(psi_at_y2):
        raise LengthMismatch(len(psi_at_y1), len(psi_at_y2))
    for name, values in (("psi_at_y1", psi_at_y1), ("psi_at_y2", psi_at_y2)):
        for i, v in enumerate(values, start=1):
            if v < 0:
                raise NegativePsi(name, i, v)

    swapped = y1 < y2
    if swapped:
        y1, y2 = y2, y1
        psi_at_y1, psi_at_y2 = psi_at_y2, psi_at_y1
    pair = DominancePair(x + y1, CapSchedule(psi_at_y1), x + y2, CapSchedule(psi_at_y2))
    result = decompose_difference(pair, DecompositionMode.CHECKED, tolerance)
    if swapped:
        result = replace(result, swapped=True)
    return result
