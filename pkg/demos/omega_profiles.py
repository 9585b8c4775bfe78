"""
Prime-divisor profiles of d + x^2
=================================

For each d we look at the numbers d + x^2 (or d - x^2) over a range of x and
record the largest number of distinct prime divisors.  Small maxima are rare
and the rare d are exactly the ones in the theorem lists.
"""

import numpy as np

from omegaquad import build_spf, m_even, m_even_real, m_odd
from omegaquad.kernel import PROFILES, sweep

table = build_spf(20_000)

# A single d: the witness is the smallest x attaining the maximum.
r = m_odd(75, table)
print(f"M_odd(75) = {r.max_omega}, attained at x = {r.witness_x}: 75 + {r.witness_x}^2 = {r.witness_factorization}")

for d in (150, 198, 54):
    print(f"M_even({d}) = {m_even(d, table).max_omega}   M'_even({d}) = {m_even_real(d, table).max_omega}")

# The same maximum for a whole block of d at once.  The sweep drops a d as soon
# as some x exceeds the threshold, so it never looks at most of the x range.
ds = np.arange(1, 10_001)
odd = ds[ds % 2 == 1]
res = sweep(odd, PROFILES["m_odd"], 2, table)
print(f"{res.d.size} odd d <= 10000 have M_odd(d) <= 2; the largest is {res.d.max()}")

# How the maximum is distributed: most d quickly reach 3 or more.
res3 = sweep(odd, PROFILES["m_odd"], 3, table)
print(f"... and {res3.d.size} have M_odd(d) <= 3")
