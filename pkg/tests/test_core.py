from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from capsplit import (
    CapSchedule,
    EmptySchedule,
    InvertedInterval,
    NonNegativityViolation,
    NumericMode,
    Pivot,
    PivotKind,
    allocate,
    classify_pivot,
    positive_part,
    split_interval,
)
from helpers import caps_lists, fractions, unit_pour

F = Fraction


@pytest.mark.parametrize(
    "x, caps, expected",
    [
        (0, [1, 2], [0, 0, 0]),
        (3, [5, 2], [3, 0, 0]),
        (-2, [3], [-2, 0]),
        # frozen from helpers.unit_pour
        (10, [3, 4, 5], [3, 4, 3, 0]),
        (20, [3, 4, 5], [3, 4, 5, 8]),
        (7, [7], [7, 0]),
    ],
)
def test_allocate_examples(x, caps, expected):
    alloc = allocate(F(x), [F(c) for c in caps])
    assert list(alloc.terms) == expected
    assert alloc.total() == x
    assert len(alloc) == len(caps) + 1


def test_allocate_fractional():
    alloc = allocate(F(7, 2), [F(1, 3), F(2), F(5)])
    assert alloc.terms == (F(1, 3), F(2), F(7, 6), 0)


def test_allocation_accessors(example_caps):
    alloc = allocate(F(20), example_caps)
    assert alloc.tranches == (3, 4, 5)
    assert alloc.residual == 8
    assert alloc.schedule.caps == tuple(example_caps)


def test_empty_schedule_rejected():
    with pytest.raises(EmptySchedule):
        allocate(F(1), [])
    with pytest.raises(EmptySchedule):
        CapSchedule(())


def test_negative_cap_rejected():
    with pytest.raises(NonNegativityViolation) as info:
        allocate(F(1), [F(1), F(-1, 2)])
    assert info.value.index == 2
    assert info.value.value == F(-1, 2)


def test_zero_caps_allowed():
    assert allocate(F(5), [F(0), F(2), F(0)]).terms == (0, 2, 0, 3)
    assert allocate(F(0), [F(0)]).terms == (0, 0)


def test_prefix_sums_cached():
    s = CapSchedule((F(3), F(4), F(5)))
    assert s.prefix_sums == (0, 3, 7, 12)
    assert s.total == 12
    assert s.m == 3


def test_positive_part_keeps_type():
    assert isinstance(positive_part(F(-3)), Fraction)
    assert positive_part(-1.5) == 0.0 and isinstance(positive_part(-1.5), float)
    assert positive_part(F(2, 3)) == F(2, 3)


def test_float_inputs():
    alloc = allocate(10.0, [3.0, 4.0, 5.0])
    assert alloc.terms == (3.0, 4.0, 3.0, 0.0)
    assert all(isinstance(t, float) for t in alloc.terms)


def test_numeric_mode_coerce():
    assert NumericMode.EXACT.coerce("3/7") == F(3, 7)
    assert NumericMode.FLOAT.coerce(F(1, 4)) == 0.25


@pytest.mark.parametrize(
    "x, caps, expected",
    [
        (10, [3, 4, 5], Pivot(PivotKind.INTERIOR, 2)),
        (3, [5, 2], Pivot(PivotKind.BELOW_FIRST_CAP)),
        (12, [3, 4, 5], Pivot(PivotKind.AT_OR_ABOVE_TOTAL)),
        (-4, [3, 4, 5], Pivot(PivotKind.BELOW_FIRST_CAP)),
        (7, [3, 4, 5], Pivot(PivotKind.INTERIOR, 1)),
        (F(7) + F(1, 100), [3, 4, 5], Pivot(PivotKind.INTERIOR, 2)),
    ],
)
def test_classify_pivot_examples(x, caps, expected):
    assert classify_pivot(F(x), [F(c) for c in caps]) == expected


def test_pivot_precedence_single_cap():
    # x = y1 = S_m: below-first-cap wins
    assert classify_pivot(F(4), [F(4)]).kind is PivotKind.BELOW_FIRST_CAP
    assert classify_pivot(F(5), [F(4)]).kind is PivotKind.AT_OR_ABOVE_TOTAL


def test_zero_cap_never_interior_successor():
    # S_1 = 3, S_2 = 3: no x satisfies 3 < x <= 3, so i0 = 1 is unreachable
    caps = [F(3), F(0), F(5)]
    for x in (F(3), F(3) + F(1, 10**6), F(7)):
        pivot = classify_pivot(x, caps)
        assert pivot.index != 1


def test_pivot_str():
    assert str(Pivot(PivotKind.INTERIOR, 2)) == "interior(2)"
    assert str(Pivot(PivotKind.BELOW_FIRST_CAP)) == "below_first_cap"


@pytest.mark.parametrize(
    "a, b, lengths, expected",
    [
        (0, 10, [3, 4, 5], [0, 3, 7, 10, 10]),
        (2, 2, [1], [2, 2, 2]),
        (0, 20, [3, 4, 5], [0, 3, 7, 12, 20]),
        (-5, 1, [2, 2], [-5, -3, -1, 1]),
    ],
)
def test_split_interval_examples(a, b, lengths, expected):
    assert list(split_interval(F(a), F(b), [F(v) for v in lengths])) == expected


def test_split_interval_inverted():
    with pytest.raises(InvertedInterval):
        split_interval(F(3), F(1), [F(1)])


def test_split_interval_propagates_schedule_errors():
    with pytest.raises(EmptySchedule):
        split_interval(F(0), F(1), [])


# properties


@given(st.integers(-30, 60), st.lists(st.integers(0, 12), min_size=1, max_size=6))
def test_matches_unit_pour(x, caps):
    assert list(allocate(F(x), [F(c) for c in caps]).terms) == unit_pour(x, caps)


@given(fractions, caps_lists)
def test_conservation(x, caps):
    assert allocate(x, caps).total() == x


@given(fractions, caps_lists)
def test_bounds(x, caps):
    t = allocate(x, caps).terms
    assert t[0] <= caps[0]
    assert all(0 <= tj <= yj for tj, yj in zip(t[1:-1], caps[1:]))
    assert t[-1] >= 0


@given(fractions.filter(lambda v: v < 0), caps_lists)
def test_negative_amount_in_first_term(x, caps):
    assert allocate(x, caps).terms == (x,) + (0,) * len(caps)


@given(fractions.filter(lambda v: v >= 0), caps_lists)
def test_saturation_order(x, caps):
    t = allocate(x, caps).terms
    for j, y in enumerate(caps):
        if t[j] < y:
            assert all(tk == 0 for tk in t[j + 1:])
            break


@given(fractions, fractions, caps_lists)
def test_monotone_in_amount(x1, x2, caps):
    lo, hi = sorted((x1, x2))
    a, b = allocate(lo, caps).terms, allocate(hi, caps).terms
    assert all(p <= q for p, q in zip(a, b))


@given(fractions, fractions, caps_lists)
def test_lipschitz_in_amount(x1, x2, caps):
    a, b = allocate(x1, caps).terms, allocate(x2, caps).terms
    assert all(abs(p - q) <= abs(x1 - x2) for p, q in zip(a, b))


@given(fractions.filter(lambda v: v >= 0), fractions.filter(lambda v: v >= 0), caps_lists)
def test_split_breakpoints_monotone_in_width(w1, w2, caps):
    lo, hi = sorted((w1, w2))
    p, q = split_interval(F(0), lo, caps), split_interval(F(0), hi, caps)
    assert all(u <= v for u, v in zip(p, q))


@given(fractions, fractions, caps_lists)
def test_split_interval_pieces(a, b, caps):
    assume(a <= b)
    points = split_interval(a, b, caps)
    assert points[0] == a and points[-1] == b
    assert len(points) == len(caps) + 2
    pieces = [q - p for p, q in zip(points, points[1:])]
    assert pieces == list(allocate(b - a, caps).terms)


@given(fractions, caps_lists)
def test_pivot_agrees_with_allocation(x, caps):
    s = CapSchedule(tuple(caps))
    pivot = classify_pivot(x, s)
    t = allocate(x, s).terms
    sums = s.prefix_sums
    if pivot.kind is PivotKind.BELOW_FIRST_CAP:
        assert x <= caps[0]
    elif pivot.kind is PivotKind.AT_OR_ABOVE_TOTAL:
        assert x > caps[0] and x >= s.total
    else:
        i0 = pivot.index
        assert 1 <= i0 <= s.m - 1
        assert [i for i in range(1, s.m) if sums[i] < x <= sums[i + 1]] == [i0]
        assert t[:i0] == s.caps[:i0]
        assert 0 < t[i0] == x - sums[i0] <= caps[i0]
        assert all(v == 0 for v in t[i0 + 1:])
