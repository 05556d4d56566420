"""閉形式で共通に使う数値処理

- 入力スカラーのmpmathへの変換と有理数判定
- 2πの有理数倍の三角関数の厳密値
- 打ち切りTaylor級数の残り（cos, sin, exp）
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any

from mpmath import mp, mpf

# 残りを級数で求める|z|の上限
TAIL_SERIES_RADIUS = 1


def to_mp(x: Any) -> Any:
    """Fraction, int, float, complex, mpmathの数を現在の精度のmpf/mpcにする"""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


def as_fraction(x: Any, max_denominator: int | None = None) -> Fraction | None:
    """xが（分母max_denominator以下の）有理数として表せればFractionを返す

    floatは2進表現そのものが有理数なので、limit_denominatorで戻して一致したものだけ採用する。
    """
    if isinstance(x, bool):
        return None
    if isinstance(x, (int, Fraction)):
        frac = Fraction(x)
    else:
        value = complex(x)
        if value.imag != 0:
            return None
        frac = Fraction(value.real).limit_denominator(max_denominator or 10**6)
        if float(frac) != value.real:
            return None
    if max_denominator is not None and frac.denominator > max_denominator:
        return None
    return frac


def exact_cos_sin_2pi(t: Any) -> tuple[mpf, mpf] | tuple[None, None]:
    """tが有理数で4tが整数なら (cos 2πt, sin 2πt) を0, ±1で厳密に返す

    sin(2πZ)などに残る1e-40程度のノイズが大きな係数で増幅されるのを防ぐ。
    厳密値にならないときは (None, None)。
    """
    if isinstance(t, Fraction) and (4 * t).denominator == 1:
        quarter = int(4 * t) % 4
        return (mpf(1), mpf(0), mpf(-1), mpf(0))[quarter], (mpf(0), mpf(1), mpf(0), mpf(-1))[quarter]
    return None, None


def ratio(x: Any, m: Any) -> Any:
    """x/m。両方が有理数ならFractionのまま計算する"""
    fx, fm = as_fraction(x), as_fraction(m)
    if fx is not None and fm is not None:
        return fx / fm
    return to_mp(x) / to_mp(m)


def cos_tail(z: Any, order: int, value: Any = None) -> Any:
    """cos z - sum_{j=0}^{order} (-1)^j z^{2j}/(2j)!

    Args:
        z (Any): 引数
        order (int): 打ち切る項の添字
        value (Any, optional): cos zの値（厳密値を渡すとき）
    """
    if abs(z) <= TAIL_SERIES_RADIUS and value is None:
        return _series_tail(z, lambda j: (-1) ** j * z ** (2 * j) / factorial(2 * j), order + 1)
    head = mp.fsum((-1) ** j * z ** (2 * j) / factorial(2 * j) for j in range(order + 1))
    return (mp.cos(z) if value is None else value) - head


def sin_tail(z: Any, order: int, value: Any = None) -> Any:
    """sin z - sum_{j=0}^{order} (-1)^j z^{2j+1}/(2j+1)!

    orderが負のときはsin zそのもの。
    """
    if abs(z) <= TAIL_SERIES_RADIUS and value is None:
        return _series_tail(z, lambda j: (-1) ** j * z ** (2 * j + 1) / factorial(2 * j + 1), order + 1)
    head = mp.fsum((-1) ** j * z ** (2 * j + 1) / factorial(2 * j + 1) for j in range(order + 1))
    return (mp.sin(z) if value is None else value) - head


def exp_tail(z: Any, order: int) -> Any:
    """e^z - sum_{j=0}^{order} z^j/j!"""
    if abs(z) <= TAIL_SERIES_RADIUS:
        return _series_tail(z, lambda j: z**j / factorial(j), order + 1)
    return mp.exp(z) - mp.fsum(z**j / factorial(j) for j in range(order + 1))


def _series_tail(z: Any, term: Any, start: int) -> Any:
    # |z| <= 1 なので項は階乗で減っていく
    total = mpf(0)
    eps = mpf(2) ** (-mp.prec - 10)
    j = start
    while True:
        t = term(j)
        total += t
        if abs(t) <= eps * max(abs(total), mpf("1e-300")) or t == 0:
            return total
        j += 1
