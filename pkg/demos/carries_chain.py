"""
The carries chain
=================

Adding n random base-b numbers column by column produces a sequence of
carries. The carry into the next column depends only on the carry coming
in, so the carries form a Markov chain on {0, ..., n-1}.
"""

from carrymix import build_P, stationary
from carrymix.carries import carry_moments, separation_closed, separation_exact
from carrymix.exact import char_poly, fmt_rational

# transition matrix for three decimal numbers
P = build_P(3, 10)
for row in P.rows:
    print("  ".join(f"{fmt_rational(x):>8}" for x in row))

###############################################################################
# The stationary law is Eulerian, A(n, j)/n!, and does not depend on the base.

pi = stationary(4)
print([fmt_rational(p) for p in pi])
for b in (2, 3, 10):
    left = [sum(pi[i] * build_P(4, b)[i, j] for i in range(4)) for j in range(4)]
    print(b, left == list(pi))

###############################################################################
# Eigenvalues are 1, 1/b, ..., 1/b^(n-1). char_poly is exact, highest degree first.

print([fmt_rational(c) for c in char_poly(build_P(4, 2))])

###############################################################################
# Mean and variance of the j-th carry starting from zero.

for j in range(1, 5):
    mo = carry_moments(5, 2, j)
    print(j, fmt_rational(mo.mean), fmt_rational(mo.variance))

###############################################################################
# Separation from stationarity after r columns. The product formula needs
# no matrix, so it also works for n = 512.

for r in range(6):
    print(r, fmt_rational(separation_exact(6, 2, r)), fmt_rational(separation_closed(6, 2, r)))
for r in (16, 18, 20):
    print(r, float(separation_closed(512, 2, r)))
