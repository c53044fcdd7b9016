from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from carrymix.carries import build_P
from carrymix.exact import RationalMatrix, eulerian
from carrymix.sections import build_C, section_poly, series_from_h, trim_to_P


def brute_C(n, r):
    size = n + 2
    rows = [[0] * size for _ in range(size)]
    for a in product(range(r), repeat=n + 1):
        s = sum(a)
        for i, j in product(range(size), range(size)):
            if i * r - j == s:
                rows[i][j] += 1
    return RationalMatrix(rows)


def test_build_C_examples():
    assert build_C(1, 2) == RationalMatrix([[1, 0, 0], [1, 2, 1], [0, 0, 1]])
    # a_1 in {0,1} can never equal 2*1 - 0 = 2
    assert build_C(0, 2) == RationalMatrix([[1, 0], [0, 1]])
    for n in range(0, 5):
        assert build_C(n, 1) == RationalMatrix.identity(n + 2)


@pytest.mark.parametrize("n,r", [(n, r) for n in range(0, 4) for r in range(1, 5)])
def test_build_C_matches_enumeration(n, r):
    assert build_C(n, r) == brute_C(n, r)


def test_section_poly_examples():
    assert section_poly([0, 1, 0], 2) == [0, 2, 0]
    assert section_poly([3, 1, 4, 1], 1) == [3, 1, 4, 1]
    p3 = [0, 1, 4, 1, 0]
    out = section_poly(p3, 2)
    series = series_from_h(out, 3, 10)
    assert series == [(2 * k) ** 3 for k in range(10)]


def test_series_expansion_of_eulerian_numerators():
    for n in range(1, 6):
        h = [0] + [eulerian(n, j) for j in range(n)] + [0]
        assert series_from_h(h, n, 30) == [k**n for k in range(30)]


def test_section_grid():
    for n, r in product(range(0, 5), range(1, 5)):
        h = [0] + [eulerian(n, j) for j in range(n)] + [0] if n else [1, 0]
        out = section_poly(h, r)
        assert series_from_h(out, n, 15) == [(r * k) ** n for k in range(15)]


@settings(max_examples=60)
@given(st.integers(0, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-20, 20), min_size=n + 2, max_size=n + 2), st.integers(1, 4))))
def test_section_poly_random_h(args):
    h, r = args
    section_poly(h, r)  # raises on disagreement with the series route


def test_section_poly_accepts_fractions():
    out = section_poly([Fraction(1, 2), 0, 0], 3)
    assert out[0] == Fraction(1, 2)


def test_trim_examples():
    assert trim_to_P(1, 2) == RationalMatrix([[1]])
    assert trim_to_P(3, 10) == build_P(3, 10)
    assert trim_to_P(2, 2) == RationalMatrix([["3/4", "1/4"], ["1/4", "3/4"]])


def test_composition_totals():
    # with b <= n + 2 every achievable sum s is i*b - j for some entry, so the
    # distinct counts in C add up to all b^(n+1) digit tuples
    for n, b in product(range(0, 5), range(2, 7)):
        if b > n + 2:
            continue
        C = build_C(n, b)
        covered = {}
        for i, j in product(range(n + 2), range(n + 2)):
            covered.setdefault(i * b - j, C[i, j])
        assert sum(covered.get(s, 0) for s in range((n + 1) * (b - 1) + 1)) == b ** (n + 1)


def test_h_length_checked():
    with pytest.raises(ValueError):
        section_poly([1], 2)
