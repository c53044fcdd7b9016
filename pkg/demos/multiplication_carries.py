"""
Carries when multiplying by k
=============================

Multiplying a random number by a fixed k gives another carries chain, this
time on {0, ..., k-1}. Its matrix is doubly stochastic, so the chain tends
to the uniform law.
"""

from fractions import Fraction

from carrymix.exact import fmt_rational
from carrymix.multiplication import build_K, is_generalized_circulant, mult_carry_trace, mult_tv_exact

# 1423 * 26, digits least significant first
print(mult_carry_trace(26, 10, [3, 2, 4, 1]))

K = build_K(7, 10)
for row in K.rows:
    print(" ".join(fmt_rational(x) for x in row))
print("doubly stochastic:", K.is_doubly_stochastic(), " circulant shift 3:", is_generalized_circulant(K, 3))

###############################################################################
# Distance to uniform after r digits against the bound k / (2 b^r).

for r in range(1, 5):
    print(r, fmt_rational(mult_tv_exact(7, 10, r)), fmt_rational(Fraction(7, 2 * 10**r)))
