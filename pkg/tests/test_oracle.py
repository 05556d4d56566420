from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from closed_forms import FourierParams, LerchParams, ProgressionParams
from oracle import sum_fourier, sum_hp, sum_lagrange, sum_lerch


def _exact(x):
    return mpf(x.numerator) / x.denominator


def test_sum_hp_examples():
    with mp.workdps(50):
        assert abs(sum_hp(ProgressionParams(2, 1, 1, 2)) - _exact(Fraction(8, 15))) < mpf(10) ** -48
        assert abs(sum_hp(ProgressionParams(1, 0, 2, 3)) - _exact(Fraction(49, 36))) < mpf(10) ** -48
        expected = sum(Fraction(1, (3 * j - 1) ** 5) for j in range(1, 21))
        assert abs(sum_hp(ProgressionParams(3, -1, 5, 20)) - _exact(expected)) < mpf(10) ** -48


def test_sum_fourier_reductions():
    p = ProgressionParams(1, 0, 3, 6)
    with mp.workdps(50):
        assert abs(sum_fourier(FourierParams(p, 1), "cos") - sum_hp(p)) < mpf(10) ** -48
    assert sum_fourier(FourierParams(p, 2), "sin") == 0


def test_sum_fourier_rejects_unknown_kind():
    with pytest.raises(ValueError):
        sum_fourier(FourierParams(ProgressionParams(1, 0, 1, 1), 2), "tan")


def test_sum_lerch_examples():
    with mp.workdps(50):
        assert abs(sum_lerch(LerchParams(1, 1, -1, 1)) - mp.exp(-2) / 2) < mpf(10) ** -48
        assert abs(sum_lerch(LerchParams(2, 3, 0, 4)) - sum_hp(ProgressionParams(1, 2, 3, 4))) < mpf(10) ** -48
        value = sum_lerch(LerchParams(Fraction(1, 2), 2, mpc(0, mp.pi / 4), 6))
        assert isinstance(value, mpc)


def test_sum_lagrange():
    with mp.workdps(50):
        single = sum_lagrange("sin", Fraction(1, 3), Fraction(1, 7), 2, 1)
        assert abs(single - mp.sin(4 * mp.pi * (mpf(1) / 3 + mpf(1) / 7))) < mpf(10) ** -45
    assert sum_lagrange("sin", Fraction(7, 10), Fraction(3, 10), 0, 6) == 0


@pytest.mark.parametrize(
    "total",
    [
        lambda reverse: sum_hp(ProgressionParams(2, 1, 2, 500), reverse),
        lambda reverse: sum_fourier(FourierParams(ProgressionParams(1, 1, 1, 300), Fraction(7, 2)), "cos", reverse),
        lambda reverse: sum_lerch(LerchParams(Fraction(1, 2), 2, complex(0.5, 1 / 3), 200), reverse),
        lambda reverse: sum_lagrange("cos", Fraction(7, 10), Fraction(3, 10), Fraction(19, 10), 6, reverse),
    ],
)
def test_summation_order_does_not_matter(total):
    forward, backward = total(False), total(True)
    with mp.workdps(50):
        assert abs(forward - backward) <= mpf(10) ** -25 * max(abs(forward), 1)
