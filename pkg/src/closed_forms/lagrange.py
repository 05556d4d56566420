"""Lagrangeの三角恒等式による有限和 sum_{j=1}^{K} sin, cos(2πn(aj+b)/K) の閉形式と、そこから出るべき級数の検算"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Any

from mpmath import mp, mpf

from errors import CotPoleError, ValidationError
from exact_core import bernoulli_table
from settings import DEFAULT_SETTINGS, Settings

from .numeric import as_fraction, to_mp

# an/Kが整数にこれより近ければcotの極とみなす
COT_POLE_TOL = 1e-12
# 級数の検算で上乗せする桁数
SERIES_EXTRA_DPS = 20
# 級数の検算を受け付ける範囲（lagrange_series_check参照）
SERIES_MAX_TURNS = 2
SERIES2_MAX_RATIO = Fraction(1, 2)


class TrigKind(Enum):
    """三角関数の種類"""

    SIN = "sin"
    COS = "cos"


class SeriesKind(Enum):
    """検算するべき級数"""

    # sin 2πn(a + b/K) の展開
    SERIES1 = "series1"
    # sin πn(a + 2b/K) sin πan cot(πan/K) の展開
    SERIES2 = "series2"


def _check_cot_pole(a: Any, n: Any, big_k: int) -> None:
    frac_a, frac_n = as_fraction(a), as_fraction(n)
    if frac_a is not None and frac_n is not None:
        t = frac_a * frac_n / big_k
        if t.denominator == 1:
            raise CotPoleError(f"an/K = {t} が整数のためcot(πan/K)が発散します")
        return
    t = to_mp(a) * to_mp(n) / big_k
    if abs(t - mp.nint(t)) < COT_POLE_TOL:
        raise CotPoleError(f"an/K = {mp.nstr(t, 15)} が整数に近すぎます")


def lagrange_closed_form(
    kind: TrigKind, a: Any, b: Any, n: Any, big_k: int, config: Settings | None = None
) -> mpf:
    """sum_{j=1}^{K} sin(2πn(aj+b)/K)（またはcos）の閉形式

    sin: -½ sin(2πbn/K) + ½ sin 2πn(a+b/K) + sin πn(a+2b/K) sin πan cot(πan/K)
    cos: -½ cos(2πbn/K) + ½ cos 2πn(a+b/K) + cos πn(a+2b/K) sin πan cot(πan/K)

    Args:
        kind (TrigKind): sinかcosか
        a (Any): 実数
        b (Any): 実数
        n (Any): 実数
        big_k (int): 項数K（1以上）
        config (Settings | None, optional): 設定

    Returns:
        mpf: 和の値
    """
    if isinstance(big_k, bool) or not isinstance(big_k, int) or big_k < 1:
        raise ValidationError(f"Kは1以上の整数である必要があります: {big_k!r}")
    _check_cot_pole(a, n, big_k)
    config = config or DEFAULT_SETTINGS
    with mp.workdps(config.dps):
        a, b, n = to_mp(a), to_mp(b), to_mp(n)
        wave = mp.sin if kind is TrigKind.SIN else mp.cos
        return (
            -wave(2 * mp.pi * b * n / big_k) / 2
            + wave(2 * mp.pi * n * (a + b / big_k)) / 2
            + wave(mp.pi * n * (a + 2 * b / big_k)) * mp.sin(mp.pi * a * n) * mp.cot(mp.pi * a * n / big_k)
        )


def _bernoulli_weight(j: int, big_k: int, shift: int) -> Fraction:
    # sum_{p=0}^{j} B_{2p} K^{2j+shift-2p} / ((2j+shift-2p)! (2p)!)
    table = bernoulli_table(2 * j)
    total = Fraction(0)
    for p in range(j + 1):
        power = 2 * j + shift - 2 * p
        total += table[2 * p] * Fraction(big_k) ** power / (factorial(power) * factorial(2 * p))
    return total


def _to_mpf(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


def _check_series_domain(which: SeriesKind, a: Any, b: Any, n: Any, big_k: int) -> None:
    with mp.workdps(30):
        a, b, n = to_mp(a), to_mp(b), to_mp(n)
        turns = abs(a * n) + abs(b * n / big_k)
        if turns > SERIES_MAX_TURNS:
            raise ValidationError(f"|an| + |bn/K| = {mp.nstr(turns, 8)} が検算範囲 {SERIES_MAX_TURNS} を超えています")
        ratio = abs(a * n / big_k)
        if which is SeriesKind.SERIES2 and ratio > _to_mpf(SERIES2_MAX_RATIO):
            raise ValidationError(f"|an/K| = {mp.nstr(ratio, 8)} が {SERIES2_MAX_RATIO} を超えています")


def lagrange_series_check(
    which: SeriesKind, a: Any, b: Any, n: Any, big_k: int, trunc: int, config: Settings | None = None
) -> tuple[mpf, mpf]:
    """恒等式から出るべき級数をtrunc次で打ち切った値と、閉じた右辺を返す

    x = 2πbn/K, y = 2πan/K とおく。bで割らない形に整理してあるので b = 0 でも評価できる。

    打ち切った級数はxと2πanについての次数 2trunc+1 までの多項式なので、
    |2πan| + |x| が大きいと打ち切り誤差が急に増える。またSERIES2のyの級数は cot(y/2) の極
    y = ±2π で収束半径が尽きる。そこで |an| + |bn/K| <= 2（SERIES2はさらに |an/K| <= 1/2）
    の範囲だけを受け付ける。この範囲なら trunc = 40 で誤差は1e-10を十分下回る。

    Args:
        which (SeriesKind): どちらの級数か
        a (Any): 有理数
        b (Any): 有理数
        n (Any): 有理数
        big_k (int): K
        trunc (int): 外側の和の打ち切り次数（1以上）
        config (Settings | None, optional): 設定

    Returns:
        tuple[mpf, mpf]: (級数の値, 右辺の値)

    Raises:
        ValidationError: 打ち切り次数やKが不正なとき、または上の範囲の外
    """
    if trunc < 1:
        raise ValidationError(f"truncは1以上である必要があります: {trunc}")
    if big_k < 1:
        raise ValidationError(f"Kは1以上である必要があります: {big_k}")
    _check_series_domain(which, a, b, n, big_k)
    config = config or DEFAULT_SETTINGS
    with mp.workdps(config.dps + SERIES_EXTRA_DPS):
        a, b, n = to_mp(a), to_mp(b), to_mp(n)
        x = 2 * mp.pi * b * n / big_k
        if which is SeriesKind.SERIES1:
            z = 2 * mp.pi * a * n
            lhs = mp.fsum(
                (-1) ** i
                * (
                    x ** (2 * i + 1 - 2 * j) * z ** (2 * j) / (factorial(2 * j) * factorial(2 * i + 1 - 2 * j))
                    + x ** (2 * i - 2 * j) * z ** (2 * j + 1) / (factorial(2 * j + 1) * factorial(2 * i - 2 * j))
                )
                for i in range(trunc + 1)
                for j in range(i + 1)
            )
            rhs = mp.sin(x + z)
            return lhs, rhs

        y = 2 * mp.pi * a * n / big_k
        f_even = [_to_mpf(_bernoulli_weight(j, big_k, 1)) for j in range(trunc + 1)]
        f_odd = [_to_mpf(_bernoulli_weight(j, big_k, 2)) for j in range(trunc + 1)]
        lhs = mp.fsum(
            (-1) ** i
            * (
                x ** (2 * i + 1 - 2 * j) * y ** (2 * j) / factorial(2 * i + 1 - 2 * j) * f_even[j]
                + x ** (2 * i - 2 * j) * y ** (2 * j + 1) / factorial(2 * i - 2 * j) * f_odd[j]
            )
            for i in range(trunc + 1)
            for j in range(i + 1)
        )
        half = big_k * y / 2
        if abs(mp.sin(y / 2)) < mpf(10) ** (-config.dps):
            # sin(Ky/2)/sin(y/2) の y/2 → πZ での極限
            ratio = big_k * mp.cos(half) / mp.cos(y / 2)
            rhs = mp.sin(x + half) * ratio * mp.cos(y / 2)
        else:
            rhs = mp.sin(x + half) * mp.sin(half) * mp.cot(y / 2)
        return lhs, rhs
