from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from capsplit import (
    EmptySchedule,
    FuzzConfig,
    Hypothesis,
    NonNegativityViolation,
    NumericMode,
    allocate,
    allocate_sequential,
    check_dominance,
    dominance_pair_from,
    generate_case,
    generate_dominance_pair,
    generate_equal_caps_pair,
    generate_violating_pair,
)
from capsplit.oracle import CASES_PER_SCHEDULE
from helpers import caps_lists, fractions, unit_pour

F = Fraction


@pytest.mark.parametrize(
    "x, caps, expected",
    [
        (10, [3, 4, 5], [3, 4, 3, 0]),
        (-2, [3], [-2, 0]),
        (7, [7], [7, 0]),
        (0, [0, 0], [0, 0, 0]),
    ],
)
def test_sequential_examples(x, caps, expected):
    assert list(allocate_sequential(F(x), [F(c) for c in caps]).terms) == expected


def test_sequential_errors():
    with pytest.raises(EmptySchedule):
        allocate_sequential(F(1), [])
    with pytest.raises(NonNegativityViolation):
        allocate_sequential(F(1), [F(-1)])


@given(st.integers(-30, 60), st.lists(st.integers(0, 12), min_size=1, max_size=6))
def test_sequential_matches_unit_pour(x, caps):
    assert list(allocate_sequential(F(x), [F(c) for c in caps]).terms) == unit_pour(x, caps)


@given(fractions, caps_lists)
def test_sequential_equals_closed_form(x, caps):
    assert allocate_sequential(x, caps).terms == allocate(x, caps).terms


def test_generate_case_is_deterministic():
    config = FuzzConfig(seed=1, cases=50)
    first = [generate_case(config, i) for i in range(50)]
    again = [generate_case(FuzzConfig(seed=1, cases=50), i) for i in range(50)]
    assert first == again
    # order of generation does not matter
    assert [generate_case(config, i) for i in reversed(range(50))] == first[::-1]


def test_seeds_differ():
    a = [generate_case(FuzzConfig(seed=0, cases=20), i) for i in range(20)]
    b = [generate_case(FuzzConfig(seed=1, cases=20), i) for i in range(20)]
    assert a != b


def test_index_out_of_range():
    config = FuzzConfig(seed=0, cases=3)
    with pytest.raises(IndexError):
        generate_case(config, 3)
    with pytest.raises(IndexError):
        generate_dominance_pair(config, -1)


def test_config_validation():
    with pytest.raises(ValueError):
        FuzzConfig(max_m=0)
    with pytest.raises(ValueError):
        FuzzConfig(magnitude_bound=0)
    with pytest.raises(ValueError):
        FuzzConfig(seed=-1)


def test_boundary_injection_per_schedule():
    config = FuzzConfig(seed=3, cases=400)
    for block in range(config.cases // CASES_PER_SCHEDULE):
        cases = [generate_case(config, block * CASES_PER_SCHEDULE + k) for k in range(CASES_PER_SCHEDULE)]
        schedule = cases[0][1]
        assert all(s == schedule for _, s in cases)
        assert any(x in schedule.prefix_sums[1:] for x, _ in cases)


def test_zero_cap_injection():
    config = FuzzConfig(seed=0, cases=1000)
    assert any(0 in generate_case(config, i)[1].caps for i in range(config.cases))


def test_case_shapes_within_bounds():
    config = FuzzConfig(seed=5, cases=400, max_m=4, magnitude_bound=F(10), denominator_bound=6)
    signs = set()
    for i in range(config.cases):
        x, s = generate_case(config, i)
        assert 1 <= s.m <= 4
        assert all(0 <= y <= 10 and y.denominator <= 6 for y in s.caps)
        signs.add((x > 0) - (x < 0))
    assert {-1, 1} <= signs


def test_float_mode_cases():
    config = FuzzConfig(seed=2, cases=8, mode=NumericMode.FLOAT)
    x, s = generate_case(config, 5)
    assert isinstance(x, float) and all(isinstance(y, float) for y in s.caps)


def test_dominance_pair_from_example():
    pair = dominance_pair_from(F(7), [F(2), F(4)], [F(1), F(0)], F(2))
    assert pair.x1 == 10 and pair.schedule1.caps == (3, 4)
    assert pair.x2 == 7 and pair.schedule2.caps == (2, 4)
    assert check_dominance(pair) == []
    # budget inequality: 10 - 7 = 3 >= 1
    assert pair.x1 - pair.x2 - (pair.schedule1.total - pair.schedule2.total) == 2


def test_dominance_pair_from_equal_caps():
    pair = dominance_pair_from(F(5), [F(2), F(2)], [F(0), F(0)], F(0))
    assert pair.x1 == pair.x2 and pair.schedule1 == pair.schedule2


def test_dominance_pair_from_tight_budget():
    pair = dominance_pair_from(F(1), [F(2), F(0)], [F(3), F(1, 2)], F(0))
    assert pair.x1 - pair.x2 == pair.schedule1.total - pair.schedule2.total
    assert check_dominance(pair) == []


def test_dominance_pair_from_rejects_negative():
    with pytest.raises(ValueError):
        dominance_pair_from(F(1), [F(1)], [F(-1)], F(0))


def test_generated_pairs_are_sound():
    config = FuzzConfig(seed=4, cases=500)
    tight = equal = 0
    for i in range(config.cases):
        pair = generate_dominance_pair(config, i)
        assert check_dominance(pair) == []
        s1, s2 = pair.schedule1, pair.schedule2
        tight += pair.x1 - pair.x2 == s1.total - s2.total
        equal += s1 == s2 and pair.x1 == pair.x2
    assert tight > 0 and equal > 0


def test_equal_caps_pairs():
    config = FuzzConfig(seed=4, cases=200)
    for i in range(config.cases):
        pair = generate_equal_caps_pair(config, i)
        assert pair.schedule1 == pair.schedule2 and pair.x1 >= pair.x2


@pytest.mark.parametrize("hypothesis", [Hypothesis.CAP_ORDER, Hypothesis.INCREMENT_BUDGET])
def test_violating_pairs_break_exactly_one(hypothesis):
    config = FuzzConfig(seed=6, cases=300)
    for i in range(config.cases):
        pair = generate_violating_pair(config, i, hypothesis)
        broken = {v.hypothesis for v in check_dominance(pair)} - {Hypothesis.PARTIAL_SUM}
        assert broken == {hypothesis}


def test_violating_x_order_keeps_cap_order():
    config = FuzzConfig(seed=6, cases=300)
    for i in range(config.cases):
        pair = generate_violating_pair(config, i, Hypothesis.X_ORDER)
        broken = {v.hypothesis for v in check_dominance(pair)}
        assert Hypothesis.X_ORDER in broken and Hypothesis.CAP_ORDER not in broken


def test_violating_pair_rejects_derived():
    with pytest.raises(ValueError):
        generate_violating_pair(FuzzConfig(cases=1), 0, Hypothesis.PARTIAL_SUM)
