from fractions import Fraction
from math import comb

import pytest

from exact_core import bernoulli_table, faulhaber, faulhaber_even, faulhaber_odd, power_sum_oracle


def test_bernoulli_table_small_orders():
    assert bernoulli_table(0).values == (Fraction(1),)
    assert bernoulli_table(2).values == (Fraction(1), Fraction(-1, 2), Fraction(1, 6))
    table = bernoulli_table(4)
    assert table[3] == 0
    assert table[4] == Fraction(-1, 30)
    assert table.max_order == 4
    assert len(table) == 5


def test_bernoulli_odd_entries_vanish():
    table = bernoulli_table(20)
    assert all(table[j] == 0 for j in range(3, 21, 2))
    assert table[20] == Fraction(-174611, 330)


def test_bernoulli_recurrence_through_24():
    # sum_{j=0}^{m-1} C(m, j) B_j = 0 (m >= 2)
    table = bernoulli_table(24)
    for m in range(2, 26):
        assert sum(comb(m, j) * table[j] for j in range(m)) == 0
    assert table[24] == Fraction(-236364091, 2730)


def test_bernoulli_table_negative_order():
    with pytest.raises(ValueError):
        bernoulli_table(-1)


@pytest.mark.parametrize(("i", "n", "expected"), [(1, 3, 14), (0, 7, 7), (2, 4, 354)])
def test_faulhaber_even(i, n, expected):
    assert faulhaber_even(i, n) == expected


@pytest.mark.parametrize(("i", "n", "expected"), [(0, 4, 10), (1, 3, 36), (2, 5, 4425)])
def test_faulhaber_odd(i, n, expected):
    assert faulhaber_odd(i, n) == expected


@pytest.mark.parametrize(("p", "n", "expected"), [(2, 3, 14), (0, 9, 9), (7, 10, 18080425)])
def test_power_sum_oracle(p, n, expected):
    assert power_sum_oracle(p, n) == expected


@pytest.mark.parametrize("p", range(0, 13))
def test_faulhaber_matches_oracle(p):
    for n in range(1, 101):
        assert faulhaber(p, n) == power_sum_oracle(p, n)


@pytest.mark.parametrize("i", range(0, 6))
def test_split_formulas_match_general_form(i):
    for n in (1, 2, 5, Fraction(7, 3), Fraction(-1, 2)):
        assert faulhaber_even(i, n) == faulhaber(2 * i, n)
        assert faulhaber_odd(i, n) == faulhaber(2 * i + 1, n)


def test_faulhaber_rational_argument():
    # n(n+1)/2 at n = 1/2
    assert faulhaber(1, Fraction(1, 2)) == Fraction(3, 8)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        faulhaber_even(-1, 3)
    with pytest.raises(ValueError):
        faulhaber_odd(-1, 3)
    with pytest.raises(ValueError):
        power_sum_oracle(2, 0)
