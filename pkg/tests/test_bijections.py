from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from carrymix.bijections import (
    ColumnArray, bar_inverse, bar_map, carry_positions, column_carry_trace, descent_positions,
    pi_label, star_inverse, star_map, starkey_product_check, tau_trace,
)
from carrymix.errors import ConsistencyError
from carrymix.permutations import Permutation


@st.composite
def arrays(draw, max_n=6, max_m=4, max_b=4):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_m))
    b = draw(st.integers(1, max_b))
    rows = draw(st.lists(st.lists(st.integers(0, b - 1), min_size=m, max_size=m), min_size=n, max_size=n))
    return ColumnArray(tuple(map(tuple, rows)), b)


def all_arrays(n, m, b):
    for digits in product(range(b), repeat=n * m):
        yield ColumnArray(tuple(zip(*[iter(digits)] * m)), b)


def test_column_indexing(running_example):
    assert running_example.column(1) == (2, 2, 2, 1, 2, 1)
    assert running_example.column(3) == (0, 0, 1, 1, 2, 1)
    assert ColumnArray.from_columns(running_example.columns(), 3) == running_example
    with pytest.raises(ValueError):
        ColumnArray(((0, 3),), 3)


def test_file_format_round_trip(running_example):
    text = running_example.to_text()
    assert text.splitlines()[0] == "6 3 3"
    assert text.splitlines()[1] == "012"
    assert ColumnArray.from_text(text) == running_example
    assert ColumnArray.from_text("2 2 12\n11 0\n3 10\n").rows == ((11, 0), (3, 10))
    with pytest.raises(ValueError):
        ColumnArray.from_text("3 3 3\n012\n")


def test_carry_trace_examples(running_example):
    assert column_carry_trace(running_example) == (3, 3, 2)
    assert column_carry_trace(ColumnArray(((0, 0), (0, 0)), 5)) == (0, 0)
    assert column_carry_trace(ColumnArray(((1,), (1,)), 2)) == (1,)


def test_carry_positions_examples(running_example):
    assert carry_positions(running_example) == {3, 4}
    assert carry_positions(ColumnArray(((0, 0),) * 4, 3)) == frozenset()
    assert carry_positions(ColumnArray(((1,), (1,)), 2)) == {1}


def test_descent_positions_examples():
    first = ColumnArray(((0, 1, 2), (1, 0, 1), (2, 2, 0), (1, 0, 1), (0, 2, 0), (2, 1, 1)), 3)
    assert descent_positions(first) == {3, 4}
    assert descent_positions(ColumnArray(((0, 1), (0, 2), (1, 0)), 3)) == frozenset()
    assert descent_positions(ColumnArray(((2,), (1,), (0,)), 3)) == {1, 2}


def test_bar_map_examples(running_example):
    assert bar_map(running_example).rows == ((0, 1, 2), (1, 0, 1), (2, 2, 0), (1, 0, 1), (0, 2, 0), (2, 1, 1))
    single = ColumnArray(((2, 1, 0),), 3)
    assert bar_map(single) == single
    assert bar_map(ColumnArray(((2,), (2,), (2,)), 3)).rows == ((2,), (1,), (0,))


def test_star_map_example(star_example):
    assert star_map(star_example).rows == ((0, 1, 2), (1, 0, 1), (2, 2, 0), (1, 0, 1), (0, 2, 0), (2, 1, 1))
    assert star_map(star_example).column(1) == star_example.column(1)
    col = ColumnArray(((1,), (0,), (2,)), 3)
    assert star_map(col) == col


def test_pi_label_examples():
    t = ColumnArray(((1, 2), (2, 1), (1, 0), (0, 1), (0, 0), (2, 1)), 3)
    assert pi_label(t) == (4, 5, 3, 2, 1, 6)
    assert pi_label(ColumnArray.from_columns([(2, 1, 0, 1, 0, 1)], 3)) == (6, 3, 1, 4, 2, 5)
    assert pi_label(ColumnArray(((1, 1),) * 4, 2)) == Permutation.identity(4)


def test_pi_labels_of_star_example_columns(star_example):
    labels = [pi_label(ColumnArray.from_columns([c], 3)) for c in star_example.columns()]
    assert labels == [(6, 3, 1, 4, 2, 5), (5, 6, 1, 2, 3, 4), (3, 4, 5, 1, 6, 2)]
    star = star_map(star_example)
    assert [pi_label(star.rightmost(j)) for j in (1, 2, 3)] == [
        (6, 3, 1, 4, 2, 5), (4, 1, 5, 2, 6, 3), (1, 3, 6, 4, 2, 5)]
    assert starkey_product_check(star_example)


def test_tau_trace_example(running_example):
    taus = tau_trace(running_example)
    assert taus == ((6, 3, 1, 4, 2, 5), (4, 1, 5, 2, 6, 3), (1, 3, 6, 4, 2, 5))
    assert [t.descents() for t in taus] == [3, 3, 2]
    zero = ColumnArray(((0, 0, 0),) * 4, 2)
    assert all(t == Permutation.identity(4) for t in tau_trace(zero))


def test_single_column_tau_is_label_of_prefix_sums():
    for c in all_arrays(3, 1, 2):
        (tau,) = tau_trace(c)
        assert tau == pi_label(bar_map(c))
        assert tau.descents() == column_carry_trace(c)[0]


def test_starkey_exhaustive():
    arrays_ = list(all_arrays(3, 2, 2))
    assert len(arrays_) == 64
    assert all(starkey_product_check(a) for a in arrays_)
    assert starkey_product_check(ColumnArray(((1,), (0,)), 2))


@pytest.mark.parametrize("n,m,b", [(n, m, b) for n in range(1, 4) for m in range(1, 3) for b in range(1, 4)])
def test_lemmas_exhaustive(n, m, b):
    for c in all_arrays(n, m, b):
        bar = bar_map(c)
        assert descent_positions(bar) == carry_positions(c)
        assert descent_positions(bar) == pi_label(bar).descent_set()
        assert len(carry_positions(c)) == column_carry_trace(c)[-1]
        tau_trace(c)


def test_maps_injective_on_small_grid():
    grid = list(all_arrays(2, 2, 2))
    assert len({bar_map(c) for c in grid}) == 16
    assert len({star_map(c) for c in grid}) == 16


@settings(max_examples=300)
@given(arrays())
def test_round_trips(c):
    assert bar_inverse(bar_map(c)) == c
    assert star_inverse(star_map(c)) == c
    assert star_map(star_inverse(c)) == c


@settings(max_examples=300)
@given(arrays(max_n=8, max_m=5, max_b=5))
def test_lemmas_random(c):
    bar = bar_map(c)
    assert descent_positions(bar) == carry_positions(c) == pi_label(bar).descent_set()
    assert starkey_product_check(c)
    assert [t.descents() for t in tau_trace(c)] == list(column_carry_trace(c))


def test_tau_trace_raises_on_broken_invariant(monkeypatch, running_example):
    import carrymix.bijections as bj
    monkeypatch.setattr(bj, "pi_label", lambda t: Permutation.identity(t.n))
    with pytest.raises(ConsistencyError):
        bj.tau_trace(running_example)
