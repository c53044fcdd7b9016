"""
A Monte Carlo look at the joint law of carries
==============================================

Sample many column arrays, record the carries, and compare the counts with
the exact Markov law through a pooled chi-square statistic.
"""

from carrymix.montecarlo import chi2_threshold, chi_square, empirical_joint_carries, markov_joint_law

n, m, b = 5, 3, 2
exact = markov_joint_law(n, m, b)
for seed in range(5):
    res = chi_square(empirical_joint_carries(n, m, b, 10**5, seed), exact)
    print(f"seed {seed}: chi2 = {res.statistic:.2f} on {res.dof} dof, 0.999 quantile {chi2_threshold(res.dof):.2f}")
