"""Independent oracles and shared strategies for the test suite."""
from fractions import Fraction

from hypothesis import strategies as st


def unit_pour(x: int, caps: list[int]) -> list[int]:
    """Brute-force split for integer inputs: hand out one unit at a time.

    Each unit goes to the first tranche with room left, else to the residual.
    A negative amount is charged to the first tranche as a debt.
    """
    terms = [0] * (len(caps) + 1)
    if x < 0:
        terms[0] = x
        return terms
    for _ in range(x):
        for k, cap in enumerate(caps):
            if terms[k] < cap:
                terms[k] += 1
                break
        else:
            terms[-1] += 1
    return terms


fractions = st.fractions(min_value=-200, max_value=200, max_denominator=24)
caps_lists = st.lists(
    st.one_of(st.just(Fraction(0)), st.fractions(min_value=0, max_value=60, max_denominator=24)),
    min_size=1,
    max_size=8,
)


# filled by test_acceptance, printed by the terminal summary hook in conftest
ACCEPTANCE_RESULTS: list[str] = []
