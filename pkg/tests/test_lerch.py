from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from closed_forms import LerchParams, ProgressionParams, lerch_partial, null_denominator_pair, polylog_partial
from errors import NearPoleError, ValidationError
from oracle import sum_hp, sum_lerch


def _relative(value, expected):
    return abs(value - expected) / max(abs(expected), mpf(10) ** -30)


def test_single_term():
    value = lerch_partial(LerchParams(1, 1, -1, 1))
    assert abs(value - mp.exp(-2) / 2) < 1e-12


def test_imaginary_rate_with_half_shift():
    with mp.workdps(50):
        m = mpc(0, mp.pi / 4)
    params = LerchParams(Fraction(1, 2), 2, m, 6)
    assert _relative(lerch_partial(params), sum_lerch(params)) < 1e-9


@pytest.mark.parametrize("m", [-1, Fraction(-1, 2), complex(0.5, 1 / 3), mpc(0, 1)])
@pytest.mark.parametrize(("b", "k", "n"), [(1, 1, 5), (2, 3, 4), (Fraction(1, 2), 2, 5), (Fraction(-1, 3), 4, 3)])
def test_matches_direct_sum(m, b, k, n):
    params = LerchParams(b, k, m, n)
    assert _relative(lerch_partial(params), sum_lerch(params)) < 1e-9


def test_small_rate_reduces_to_harmonic():
    params = LerchParams(1, 3, 1e-10, 4)
    expected = sum_hp(ProgressionParams(1, 1, 3, 4))
    assert _relative(lerch_partial(params), expected) < 1e-10


def test_irrational_shift_uses_zeta():
    with mp.workdps(50):
        b = mp.sqrt(2) / 3
    params = LerchParams(b, 2, -1, 5)
    assert _relative(lerch_partial(params), sum_lerch(params)) < 1e-9


def test_real_inputs_return_real():
    assert isinstance(lerch_partial(LerchParams(2, 2, Fraction(-1, 2), 3)), mpf)


def test_polylog_examples():
    with mp.workdps(50):
        log_half = mp.log(mpf(1) / 2)
    assert abs(polylog_partial(1, log_half, 4) - mpf("0.68229166666666666667")) < 1e-12
    assert abs(polylog_partial(3, -1, 1) - mp.exp(-1)) < 1e-12


def test_polylog_full_turn_rejected():
    with mp.workdps(50):
        m = mpc(0, 2 * mp.pi)
    with pytest.raises(NearPoleError):
        polylog_partial(2, m, 3)


def test_null_denominator_pair_vanishes():
    pairs = [abs(null_denominator_pair(b, 2, -1)) for b in (1e-4, 1e-5, 1e-6)]
    assert pairs[0] > pairs[1] > pairs[2]
    # -(mb)^3/(3! 2b^2) の主要項
    assert abs(pairs[2] - mpf(1e-6) / 12) < 1e-12
    assert abs(pairs[1] / pairs[2] - 10) < 1e-3


def test_lerch_approaches_polylog_as_shift_vanishes():
    shifted = lerch_partial(LerchParams(mpf("1e-5"), 2, -1, 4))
    polylog = polylog_partial(2, -1, 4)
    assert abs(shifted - polylog) < 1e-4
    assert abs(shifted - polylog) > 1e-7


@pytest.mark.parametrize(("b", "n"), [(-1, 1), (-3, 5), (-2, 2)])
def test_null_shift_rejected(b, n):
    with pytest.raises(ValidationError):
        LerchParams(b, 1, -1, n)


def test_negative_shift_outside_range():
    params = LerchParams(-6, 2, -1, 4)
    assert _relative(lerch_partial(params), sum_lerch(params)) < 1e-9
