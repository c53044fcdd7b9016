from fractions import Fraction
from itertools import product

import pytest

from carrymix.carries import (
    ChainSpec, binary_P, build_P, carry_distribution, carry_moments, closed_form_variance,
    coefficient_entry, holte_entry, ratio_profile, separation_closed, separation_exact,
    separation_limit, stationary, total_carries_mean, tv_from_start,
)
from carrymix.exact import RationalMatrix, char_poly, is_totally_positive, poly_from_roots


def brute_P(n, b):
    """Transition law by enumerating all digit tuples of one column."""
    rows = []
    for i in range(n):
        row = [0] * n
        for digits in product(range(b), repeat=n):
            row[(i + sum(digits)) // b] += 1
        rows.append([Fraction(c, b**n) for c in row])
    return RationalMatrix(rows)


def test_build_P_examples():
    assert build_P(3, 10) == RationalMatrix([[132, 396, 72], [99, 402, 99], [72, 396, 132]]).scale(Fraction(1, 600))
    assert build_P(2, 2) == RationalMatrix([["3/4", "1/4"], ["1/4", "3/4"]])
    assert build_P(1, 5) == RationalMatrix([[1]])


@pytest.mark.parametrize("n,b", [(n, b) for n in range(1, 6) for b in range(2, 6)])
def test_build_P_matches_enumeration(n, b):
    assert build_P(n, b) == brute_P(n, b)


def test_two_formulas_agree_including_large_states():
    # states i >= b exercise the floor(i/b) lower limit
    for n, b in product(range(1, 9), range(2, 5)):
        for i, j in product(range(n), range(n)):
            assert holte_entry(n, b, i, j) == coefficient_entry(n, b, i, j)


@pytest.mark.parametrize("n", range(1, 9))
def test_base_two_closed_form(n):
    assert build_P(n, 2) == binary_P(n)


def test_rows_sum_to_one():
    for n, b in product(range(1, 9), range(2, 11)):
        assert all(s == 1 for s in build_P(n, b).row_sums())


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec(0, 2)
    with pytest.raises(ValueError):
        build_P(3, 1)


def test_stationary_examples():
    assert stationary(3) == (Fraction(1, 6), Fraction(2, 3), Fraction(1, 6))
    assert stationary(2) == (Fraction(1, 2), Fraction(1, 2))
    assert stationary(1) == (1,)


def test_stationary_is_left_fixed_point_for_every_base():
    for n, b in product(range(1, 8), (2, 3, 4, 7, 10)):
        assert build_P(n, b).vecmul(stationary(n)) == stationary(n)


def test_eigenvalues():
    for n, b in product(range(1, 7), (2, 3, 5)):
        assert char_poly(build_P(n, b)) == poly_from_roots(Fraction(1, b**k) for k in range(n))


def test_semigroup_integer_bases():
    for n, a, b in product(range(1, 5), range(2, 5), range(2, 5)):
        assert build_P(n, a) @ build_P(n, b) == build_P(n, a * b)


def test_tp2_and_binary_tp4():
    for n in range(1, 7):
        for b in range(2, 8):
            assert is_totally_positive(build_P(n, b), 2)
        assert is_totally_positive(build_P(n, 2), 4)


def test_carry_distribution_examples():
    assert carry_distribution(2, 2, 0) == (1, 0)
    assert carry_distribution(2, 2, 1) == (Fraction(3, 4), Fraction(1, 4))
    assert carry_distribution(3, 2, 1) == (Fraction(1, 2), Fraction(1, 2), 0)


def test_carry_moments_examples():
    m = carry_moments(2, 2, 1)
    assert (m.mean, m.variance) == (Fraction(1, 4), Fraction(3, 16))
    for b, j in product((2, 3, 10), (1, 4)):
        m = carry_moments(1, b, j)
        assert (m.mean, m.variance) == (0, 0)
    assert carry_moments(3, 10, 1).mean == Fraction(540, 600)


def test_variance_formula_needs_two_addends():
    # the (n+1)/12 law is for n >= 2; a single addend never carries
    assert closed_form_variance(1, 2, 1) == 0
    assert closed_form_variance(2, 2, 1) == Fraction(3, 16)


def test_moments_grid():
    for n, b, j in product(range(1, 7), range(2, 5), range(1, 5)):
        carry_moments(n, b, j)


def test_total_carries_mean():
    assert total_carries_mean(2, 2, 1) == Fraction(1, 4)
    assert total_carries_mean(1, 10, 7) == 0
    assert total_carries_mean(2, 2, 2) == Fraction(5, 8)
    assert carry_moments(2, 2, 2).mean == Fraction(3, 8)


def test_separation_examples():
    assert separation_exact(2, 2, 1) == Fraction(1, 2)
    assert separation_exact(3, 2, 2) == Fraction(5, 8)
    for n, b in product(range(2, 6), (2, 3, 7)):
        assert separation_exact(n, b, 0) == 1
    assert separation_closed(3, 2, 2) == Fraction(5, 8)
    assert separation_closed(2, 2, 1) == Fraction(1, 2)
    assert separation_closed(6, 2, 2) == 1  # 2^2 <= 5
    assert separation_closed(5, 3, 1) == 1


def test_separation_exact_matches_closed_and_is_attained_at_top_state():
    for n, b, r in product(range(2, 7), (2, 3), range(0, 6)):
        f = ratio_profile(n, b, r)
        assert separation_exact(n, b, r) == separation_closed(n, b, r) == 1 - f[-1]
        assert all(x >= y for x, y in zip(f, f[1:]))


def test_separation_limit():
    for c in (Fraction(1, 4), 1, 4):
        r = {Fraction(1, 4): 16, 1: 18, 4: 20}[c]
        assert 2**r == c * 512**2
        assert abs(float(separation_closed(512, 2, r)) - separation_limit(float(c))) < 0.01


def test_tv_from_start():
    assert tv_from_start(2, 2, 1) == Fraction(1, 4)
    assert tv_from_start(3, 5, 0) == Fraction(5, 6)
    assert all(tv_from_start(1, 3, r) == 0 for r in range(4))
    for n, b, r in product(range(1, 6), (2, 3), range(0, 5)):
        assert tv_from_start(n, b, r) <= separation_exact(n, b, r)


def test_power_caps():
    with pytest.raises(ValueError):
        carry_distribution(3, 2, 65)
    with pytest.raises(ValueError):
        carry_distribution(3, 2, -1)
