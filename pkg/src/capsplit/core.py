"""Closed-form waterfall split of an amount over ordered capped tranches.

An amount ``x`` is poured into tranches with caps ``y1, ..., ym``; each
tranche is filled before the next receives anything and whatever exceeds the
total of the caps lands in a residual term. The closed form evaluated here is::

    t1      = min(y1, x)
    t(j+1)  = min(y(j+1), (x - S_j)+)        j = 1 .. m-1
    r       = (x - S_m)+

where ``S_j`` is the j-th prefix sum of the caps and ``z+ = max(z, 0)``.
The terms always add up to ``x``, including for negative ``x`` (the first
term then carries all of it).

Values are plain Python numbers: ``fractions.Fraction`` (or ``int``) for exact
work and ``float`` for fast batches. Nothing in this module applies a
tolerance; comparisons are raw in both modes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, int, float]

__all__ = [
    "Scalar",
    "NumericMode",
    "CapsplitError",
    "EmptySchedule",
    "NonNegativityViolation",
    "InvertedInterval",
    "CapSchedule",
    "Allocation",
    "PivotKind",
    "Pivot",
    "positive_part",
    "as_schedule",
    "allocate",
    "classify_pivot",
    "split_interval",
]


class NumericMode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"

    def coerce(self, value) -> Scalar:
        """Convert ``value`` (number or numeric string) to this mode's type."""
        if self is NumericMode.EXACT:
            return value if isinstance(value, Fraction) else Fraction(value)
        return float(value)


class CapsplitError(ValueError):
    """Base class for contract violations raised by this package."""


class EmptySchedule(CapsplitError):
    pass


class NonNegativityViolation(CapsplitError):
    def __init__(self, index: int, value: Scalar):
        self.index = index
        self.value = value
        super().__init__(f"cap {index} is negative: {value}")


class InvertedInterval(CapsplitError):
    def __init__(self, a: Scalar, b: Scalar):
        self.a = a
        self.b = b
        super().__init__(f"interval end {b} lies below its start {a}")


def positive_part(z: Scalar) -> Scalar:
    return z if z > 0 else type(z)(0)


@dataclass(frozen=True)
class CapSchedule:
    """Ordered tranche caps with their prefix sums.

    ``prefix_sums[j]`` is ``S_j`` for ``j = 0 .. m`` (so ``prefix_sums[0]`` is
    zero and ``prefix_sums[m]`` is the total). Zero caps are allowed.
    """

    caps: tuple
    prefix_sums: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        caps = tuple(self.caps)
        if not caps:
            raise EmptySchedule("a cap schedule needs at least one cap")
        for i, y in enumerate(caps, start=1):
            if y < 0:
                raise NonNegativityViolation(i, y)
        zero = type(caps[0])(0)
        object.__setattr__(self, "caps", caps)
        object.__setattr__(self, "prefix_sums", tuple(accumulate(caps, initial=zero)))

    @property
    def m(self) -> int:
        return len(self.caps)

    @property
    def total(self) -> Scalar:
        return self.prefix_sums[-1]

    def __len__(self) -> int:
        return len(self.caps)

    def __iter__(self):
        return iter(self.caps)

    def __getitem__(self, i):
        return self.caps[i]


def as_schedule(caps: CapSchedule | Iterable[Scalar]) -> CapSchedule:
    if isinstance(caps, CapSchedule):
        return caps
    return CapSchedule(tuple(caps))


@dataclass(frozen=True)
class Allocation:
    """The ``m + 1`` payout terms of one split: ``m`` tranches then the residual."""

    terms: tuple
    x: Scalar
    schedule: CapSchedule

    @property
    def tranches(self) -> tuple:
        return self.terms[:-1]

    @property
    def residual(self) -> Scalar:
        return self.terms[-1]

    def total(self) -> Scalar:
        return sum(self.terms[1:], self.terms[0])

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]


def allocate(x: Scalar, schedule: CapSchedule | Sequence[Scalar]) -> Allocation:
    """Split ``x`` over the tranches of ``schedule`` using the closed form.

    >>> allocate(10, [3, 4, 5]).terms
    (3, 4, 3, 0)
    >>> allocate(-2, [3]).terms
    (-2, 0)
    """
    s = as_schedule(schedule)
    caps, sums = s.caps, s.prefix_sums
    terms = [min(caps[0], x)]
    for j in range(1, s.m):
        terms.append(min(caps[j], positive_part(x - sums[j])))
    terms.append(positive_part(x - sums[s.m]))
    return Allocation(tuple(terms), x, s)


class PivotKind(enum.Enum):
    BELOW_FIRST_CAP = "below_first_cap"
    AT_OR_ABOVE_TOTAL = "at_or_above_total"
    INTERIOR = "interior"


@dataclass(frozen=True)
class Pivot:
    """Where the amount runs out.

    For ``INTERIOR`` the 1-based ``index`` is the unique ``i0`` in ``1 .. m-1``
    with ``S_i0 < x <= S_(i0+1)``; it is ``None`` for the two boundary kinds.
    """

    kind: PivotKind
    index: int | None = None

    def __str__(self):
        if self.kind is PivotKind.INTERIOR:
            return f"interior({self.index})"
        return self.kind.value


def classify_pivot(x: Scalar, schedule: CapSchedule | Sequence[Scalar]) -> Pivot:
    """Classify ``x`` against the prefix sums of ``schedule``.

    Precedence is fixed: below-first-cap, then at-or-above-total, then
    interior. Comparisons are raw, also for floats.
    """
    s = as_schedule(schedule)
    sums = s.prefix_sums
    if x <= s.caps[0]:
        return Pivot(PivotKind.BELOW_FIRST_CAP)
    if x >= s.total:
        return Pivot(PivotKind.AT_OR_ABOVE_TOTAL)
    # here y1 < x < S_m, hence m >= 2 and some i0 in 1..m-1 qualifies
    for i0 in range(1, s.m):
        if sums[i0] < x <= sums[i0 + 1]:
            return Pivot(PivotKind.INTERIOR, i0)
    raise AssertionError(f"no pivot for x={x!r} and prefix sums {sums!r}")


def split_interval(a: Scalar, b: Scalar, lengths: CapSchedule | Sequence[Scalar]) -> tuple:
    """Cut ``[a, b]`` into ``m + 1`` consecutive pieces with the given lengths.

    Lengths are honored in order while the interval lasts; the last piece takes
    whatever is left. Returns the ``m + 2`` breakpoints ``a = p0 <= ... = b``.

    >>> split_interval(0, 10, [3, 4, 5])
    (0, 3, 7, 10, 10)
    """
    if b < a:
        raise InvertedInterval(a, b)
    terms = allocate(b - a, lengths).terms
    return tuple(accumulate(terms, initial=a))
