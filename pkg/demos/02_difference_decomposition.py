"""
Comparing two splits
====================

Take two amounts ``x1 >= x2`` and two schedules where the first dominates the
second cap by cap, and the extra cap room never exceeds ``x1 - x2``. Then
every tranche of the first split gets at least as much as in the second, and
the per-tranche gains add up to exactly ``x1 - x2``.
"""
# %%
from fractions import Fraction as F

from capsplit import (
    DominancePair,
    PreconditionViolated,
    check_dominance,
    decompose_difference,
    decompose_via_psi,
)

pair = DominancePair(F(10), [F(3), F(4)], F(7), [F(2), F(4)])
print(check_dominance(pair))
result = decompose_difference(pair)
print(result.term_diffs, result.total, result.expected)

# %%
# Equal schedules only need x1 >= x2.
same = DominancePair(F(9), [F(2), F(2)], F(1), [F(2), F(2)])
print(decompose_difference(same).total)

# %%
# Break the budget: the extra cap room (2) exceeds the gap (0). Checked mode
# refuses, unchecked mode shows the identity failing.
bad = DominancePair(F(2), [F(3)], F(2), [F(1)])
try:
    decompose_difference(bad)
except PreconditionViolated as exc:
    print("refused:", exc)
loose = decompose_difference(bad, "unchecked")
print(loose.term_diffs, loose.total, "vs", loose.expected, "holds:", loose.identity_holds)

# %%
# The substituted form: amounts x + y1 and x + y2, caps given by evaluations
# of some cap functions at y1 and y2. Here the caps are y / 2 per tranche.
y1, y2 = F(3), F(1)
result = decompose_via_psi(F(1), y1, y2, [y1 / 2, y1 / 2], [y2 / 2, y2 / 2])
print(result.term_diffs, result.total)

# %%
# Points given in the wrong order are swapped and flagged.
print(decompose_via_psi(F(1), y2, y1, [y2 / 2, y2 / 2], [y1 / 2, y1 / 2]).swapped)
