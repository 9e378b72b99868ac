"""
Splitting an amount over capped tranches
========================================

A payout of ``x`` is handed to tranches in order of seniority. Each tranche
takes up to its cap, and whatever is left after the last cap is the residual.
"""
# %%
from fractions import Fraction

from capsplit import allocate, allocate_sequential, classify_pivot, split_interval

caps = [Fraction(3), Fraction(4), Fraction(5)]

# %%
# The closed form needs no loop: every term is a min of the cap and the
# positive part of what is left after the earlier caps.
for x in [Fraction(-2), Fraction(0), Fraction(3), Fraction(10), Fraction(12), Fraction(20)]:
    alloc = allocate(x, caps)
    print(f"x={str(x):>3}  terms={[str(t) for t in alloc.terms]}  pivot={classify_pivot(x, caps)}")

# %%
# The pour-one-tranche-at-a-time version gives the same numbers.
x = Fraction(37, 4)
print(allocate(x, caps).terms == allocate_sequential(x, caps).terms)

# %%
# Negative amounts land entirely in the first tranche.
print(allocate(Fraction(-5, 2), caps).terms)

# %%
# Zero caps are fine; they simply receive nothing.
print(allocate(Fraction(6), [Fraction(2), Fraction(0), Fraction(3)]).terms)

# %%
# The same split read as cutting an interval into consecutive pieces.
print([str(p) for p in split_interval(Fraction(0), Fraction(10), caps)])
print([str(p) for p in split_interval(Fraction(100), Fraction(120), caps)])

# %%
# Floats work too; there is no tolerance inside the formulas.
print(allocate(0.3, [0.1, 0.1, 0.1]).terms)
