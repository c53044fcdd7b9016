"""
Riffle shuffles, descents and carries
=====================================

A b-shuffle of n cards has the same descent statistics as the carries of
n random base-b numbers. The bar map turns a column array into its list of
running sums, and the descents of those sums sit exactly where carries occur.
"""

import numpy as np

from carrymix.bijections import (
    ColumnArray, bar_map, carry_positions, column_carry_trace, descent_positions, tau_trace,
)
from carrymix.shuffling import exhaustive_shuffle_dist, gsr_sample, qb_probability

arr = ColumnArray(((0, 1, 2), (0, 1, 2), (1, 1, 2), (1, 1, 1), (2, 1, 2), (1, 2, 1)), 3)
print(arr.to_text())
print("carries:", column_carry_trace(arr))
print("bar map rows:", bar_map(arr).rows)
print("carry positions", sorted(carry_positions(arr)), "descent positions", sorted(descent_positions(bar_map(arr))))

###############################################################################
# Each prefix of columns labels a permutation; its descents count the carries.

for j, tau in enumerate(tau_trace(arr), 1):
    print(j, tau, tau.descents())

###############################################################################
# The exact law of one riffle shuffle of four cards, and a sampled check.

dist = exhaustive_shuffle_dist(4, 2)
rng = np.random.default_rng(0)
draws = [gsr_sample(4, 2, rng) for _ in range(20000)]
for perm, q in sorted(dist.items(), key=lambda kv: -kv[1])[:5]:
    print(perm, q, qb_probability(perm, 2), draws.count(perm) / len(draws))
