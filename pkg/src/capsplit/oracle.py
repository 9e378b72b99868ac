"""Step-by-step reference split and seeded input generators.

:func:`allocate_sequential` pours the amount tranche by tranche instead of
evaluating the closed form; agreement of the two is what the test suites and
the ``fuzz`` command check.

Every generator is a pure function of ``(config, index)``: each call seeds its
own :class:`random.Random` from the config seed and the index, so cases can be
produced in any order or in parallel and are stable across runs.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Allocation, CapSchedule, NumericMode, Scalar, as_schedule
from .decomposition import DominancePair, Hypothesis

__all__ = [
    "FuzzConfig",
    "allocate_sequential",
    "generate_case",
    "dominance_pair_from",
    "generate_dominance_pair",
    "generate_equal_caps_pair",
    "generate_violating_pair",
    "CASES_PER_SCHEDULE",
]

# consecutive case indices sharing one schedule: exact prefix sum, just above
# it, just below it, and a free draw
CASES_PER_SCHEDULE = 4


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    cases: int = 1000
    max_m: int = 8
    magnitude_bound: Fraction = Fraction(100)
    denominator_bound: int = 12
    mode: NumericMode = NumericMode.EXACT
    zero_cap_probability: float = 0.15

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.cases < 0:
            raise ValueError("cases must be non-negative")
        if self.max_m < 1:
            raise ValueError("max_m must be at least 1")
        if self.magnitude_bound <= 0:
            raise ValueError("magnitude_bound must be positive")
        if self.denominator_bound < 1:
            raise ValueError("denominator_bound must be at least 1")
        object.__setattr__(self, "magnitude_bound", Fraction(self.magnitude_bound))
        object.__setattr__(self, "mode", NumericMode(self.mode))


def allocate_sequential(x: Scalar, schedule) -> Allocation:
    """Pour ``x`` into the tranches one at a time.

    The first pour is not clamped at zero, so a negative amount ends up
    entirely in the first tranche; later pours only take what is left.
    """
    s = as_schedule(schedule)
    zero = type(x)(0)
    remaining = x
    terms = []
    for k, cap in enumerate(s.caps):
        available = remaining if k == 0 else max(remaining, zero)
        pour = cap if cap < available else available
        terms.append(pour)
        remaining = remaining - pour
    terms.append(max(remaining, zero))
    return Allocation(tuple(terms), x, s)


def _rng(config: FuzzConfig, stream: str, key: int) -> random.Random:
    return random.Random(f"capsplit/{stream}/{config.seed}/{key}")


def _rational(rng: random.Random, config: FuzzConfig, lo: Fraction, hi: Fraction) -> Fraction:
    d = rng.randint(1, config.denominator_bound)
    lo_n, hi_n = math.ceil(lo * d), math.floor(hi * d)
    if lo_n > hi_n:
        # [lo, hi] holds no multiple of 1/d
        return lo
    return Fraction(rng.randint(lo_n, hi_n), d)


def _small_offset(rng: random.Random, config: FuzzConfig) -> Fraction:
    d = config.denominator_bound
    return Fraction(1, rng.randint(d, d * d + 1))


def _caps(rng: random.Random, config: FuzzConfig, m: int) -> list[Fraction]:
    return [
        Fraction(0)
        if rng.random() < config.zero_cap_probability
        else _rational(rng, config, Fraction(0), config.magnitude_bound)
        for _ in range(m)
    ]


def _amount(rng: random.Random, config: FuzzConfig, total: Fraction) -> Fraction:
    # sign-balanced, reaching past the total so the residual gets exercised
    reach = total + config.magnitude_bound
    value = _rational(rng, config, Fraction(0), reach)
    return value if rng.random() < 0.5 else -value


def _emit(config: FuzzConfig, values):
    return [config.mode.coerce(v) for v in values]


def _check_index(config: FuzzConfig, index: int):
    if not 0 <= index < config.cases:
        raise IndexError(f"case index {index} outside 0..{config.cases - 1}")


def generate_case(config: FuzzConfig, index: int) -> tuple[Scalar, CapSchedule]:
    """Amount and schedule for case ``index``.

    Cases come in blocks of :data:`CASES_PER_SCHEDULE` that share a schedule.
    The first case of a block sits exactly on a prefix sum ``S_j``
    (``j >= 1``), the next two just above and just below one, the last is a
    free sign-balanced draw.
    """
    _check_index(config, index)
    block, variant = divmod(index, CASES_PER_SCHEDULE)
    srng = _rng(config, "schedule", block)
    caps = _caps(srng, config, srng.randint(1, config.max_m))
    sums = [Fraction(0)]
    for y in caps:
        sums.append(sums[-1] + y)

    rng = _rng(config, "amount", index)
    if variant == 0:
        x = sums[srng.randint(1, len(caps))]
    elif variant in (1, 2):
        anchor = sums[rng.randint(1, len(caps))]
        offset = _small_offset(rng, config)
        x = anchor + offset if variant == 1 else anchor - offset
    else:
        x = _amount(rng, config, sums[-1])
    x, *caps = _emit(config, [x, *caps])
    return x, CapSchedule(tuple(caps))


def _pair(config, x1, caps1, x2, caps2) -> DominancePair:
    x1, x2 = _emit(config, [x1, x2])
    return DominancePair(x1, CapSchedule(tuple(_emit(config, caps1))), x2, CapSchedule(tuple(_emit(config, caps2))))


def _base(rng: random.Random, config: FuzzConfig):
    caps2 = _caps(rng, config, rng.randint(1, config.max_m))
    total = sum(caps2, Fraction(0))
    if rng.random() < 0.25:
        # pin to a prefix sum so the second split sits on a saturation edge
        j = rng.randint(0, len(caps2))
        x2 = sum(caps2[:j], Fraction(0))
    else:
        x2 = _amount(rng, config, total)
    return caps2, x2


def _dominating(x2, caps2, increments, slack):
    caps1 = [a + d for a, d in zip(caps2, increments)]
    x1 = x2 + sum(increments, Fraction(0)) + slack
    return x1, caps1, x2, caps2


def dominance_pair_from(x2, caps2, increments, slack) -> DominancePair:
    """Pair with ``caps1 = caps2 + increments`` and ``x1 = x2 + sum(increments) + slack``.

    Non-negative increments and slack give a pair meeting all three
    hypotheses; zero slack makes the budget inequality an equality.

    >>> p = dominance_pair_from(7, [2, 4], [1, 0], 2)
    >>> p.x1 == 10 and p.schedule1.caps == (3, 4)
    True
    """
    if len(increments) != len(caps2):
        raise ValueError("one increment per cap expected")
    if slack < 0 or any(d < 0 for d in increments):
        raise ValueError("increments and slack must be non-negative")
    x1, caps1, x2, caps2 = _dominating(x2, list(caps2), list(increments), slack)
    return DominancePair(x1, CapSchedule(tuple(caps1)), x2, CapSchedule(tuple(caps2)))


def generate_dominance_pair(config: FuzzConfig, index: int) -> DominancePair:
    """A pair satisfying all three hypotheses by construction.

    ``caps1 = caps2 + increments`` with non-negative increments and
    ``x1 = x2 + sum(increments) + slack`` with non-negative slack. Increments
    and slack are zero with positive probability, so the budget inequality is
    regularly tight and the equal-caps case appears in the stream.
    """
    _check_index(config, index)
    rng = _rng(config, "dominance", index)
    caps2, x2 = _base(rng, config)
    increments = [
        Fraction(0) if rng.random() < 0.35 else _rational(rng, config, Fraction(0), config.magnitude_bound)
        for _ in caps2
    ]
    slack = Fraction(0) if rng.random() < 0.3 else _rational(rng, config, Fraction(0), config.magnitude_bound)
    return _pair(config, *_dominating(x2, caps2, increments, slack))


def generate_equal_caps_pair(config: FuzzConfig, index: int) -> DominancePair:
    """Identical schedules and ``x1 >= x2``; no other constraint."""
    _check_index(config, index)
    rng = _rng(config, "equal-caps", index)
    caps, x2 = _base(rng, config)
    gap = Fraction(0) if rng.random() < 0.2 else _rational(rng, config, Fraction(0), 2 * config.magnitude_bound)
    return _pair(config, x2 + gap, caps, x2, caps)


def generate_violating_pair(config: FuzzConfig, index: int, hypothesis: Hypothesis) -> DominancePair:
    """A pair that breaks ``hypothesis`` while keeping the others where possible.

    ``CAP_ORDER`` and ``INCREMENT_BUDGET`` are broken alone. ``X_ORDER`` cannot
    be: caps that dominate make the budget non-negative, so ``x1 < x2``
    always breaks the budget inequality too. That pair keeps cap order intact.
    """
    hypothesis = Hypothesis(hypothesis)
    _check_index(config, index)
    rng = _rng(config, f"violate-{hypothesis.value}", index)
    caps2, x2 = _base(rng, config)
    M = config.magnitude_bound
    m = len(caps2)

    if hypothesis is Hypothesis.X_ORDER:
        increments = [Fraction(0) if rng.random() < 0.5 else _rational(rng, config, Fraction(0), M) for _ in caps2]
        caps1 = [a + d for a, d in zip(caps2, increments)]
        x1 = x2 - _rational(rng, config, Fraction(1, config.denominator_bound), M)
    elif hypothesis is Hypothesis.CAP_ORDER:
        k = rng.randrange(m)
        if caps2[k] == 0:
            caps2[k] = _rational(rng, config, Fraction(1, config.denominator_bound), M)
        increments = [Fraction(0) if rng.random() < 0.5 else _rational(rng, config, Fraction(0), M) for _ in caps2]
        increments[k] = -_rational(rng, config, Fraction(1, config.denominator_bound), caps2[k])
        caps1 = [a + d for a, d in zip(caps2, increments)]
        budget = max(sum(increments, Fraction(0)), Fraction(0))
        slack = Fraction(0) if rng.random() < 0.3 else _rational(rng, config, Fraction(0), M)
        x1 = x2 + budget + slack
    elif hypothesis is Hypothesis.INCREMENT_BUDGET:
        increments = [Fraction(0) if rng.random() < 0.3 else _rational(rng, config, Fraction(0), M) for _ in caps2]
        k = rng.randrange(m)
        if increments[k] == 0:
            increments[k] = _rational(rng, config, Fraction(1, config.denominator_bound), M)
        caps1 = [a + d for a, d in zip(caps2, increments)]
        budget = sum(increments, Fraction(0))
        # gap drawn from [0, budget), never reaching the budget itself
        x1 = x2 + budget * Fraction(rng.randrange(0, 64), 64)
    else:
        raise ValueError(f"{hypothesis} is derived, not an input hypothesis")
    return _pair(config, x1, caps1, x2, caps2)
