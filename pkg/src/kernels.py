"""積分の中に現れる(1-u)の多項式（カーネル）を提供するモジュール

係数はBernoulli数から厳密に作り、生成関数の打ち切りTaylor展開と突き合わせて検算する。
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Callable

from mpmath import mp, mpf

from errors import BernoulliTableTooShortError
from exact_core import BernoulliTable, bernoulli_table


class KernelKind(Enum):
    """カーネルの種類"""

    SINE_EVEN = "sine_even"
    SINE_ODD = "sine_odd"
    EXP = "exp"
    # 漸化式・Fourier・Lerchの積分に出る単項式 (1-u)^p
    MONOMIAL = "monomial"


@dataclass(frozen=True)
class KernelPoly:
    """(1-u)の多項式

    Args:
        kind (KernelKind): カーネルの種類
        order (int): 次数k
        coeffs (tuple[Fraction, ...]): index pが(1-u)^pの係数
    """

    kind: KernelKind
    order: int
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        """(1-u)についての次数"""
        return len(self.coeffs) - 1


def _required_index(kind: KernelKind, k: int) -> int:
    if kind is KernelKind.EXP:
        return k
    if kind is KernelKind.MONOMIAL:
        return 0
    return 2 * k


@lru_cache(maxsize=None)
def _build_kernel(kind: KernelKind, k: int, bernoulli: BernoulliTable) -> KernelPoly:
    if kind is KernelKind.MONOMIAL:
        return KernelPoly(kind, k, tuple([Fraction(0)] * k + [Fraction(1)]))
    if kind is KernelKind.EXP:
        coeffs = [Fraction(0)] * (k + 1)
        for j in range(k + 1):
            coeffs[k - j] = bernoulli[j] / (factorial(j) * factorial(k - j))
        return KernelPoly(kind, k, tuple(coeffs))
    top = 2 * k if kind is KernelKind.SINE_EVEN else 2 * k + 1
    coeffs = [Fraction(0)] * (top + 1)
    for j in range(k + 1):
        weight = bernoulli[2 * j] * (2 - 2 ** (2 * j))
        coeffs[top - 2 * j] = weight / (factorial(2 * j) * factorial(top - 2 * j))
    return KernelPoly(kind, k, tuple(coeffs))


def kernel(kind: KernelKind, k: int, bernoulli: BernoulliTable | None = None) -> KernelPoly:
    """次数kのカーネル多項式を作る

    Args:
        kind (KernelKind): カーネルの種類
        k (int): 次数（0以上）
        bernoulli (BernoulliTable | None, optional): 使うBernoulli数表。省略時は必要な長さで作る

    Returns:
        KernelPoly: 厳密な係数を持つ多項式
    """
    if k < 0:
        raise ValueError(f"kは0以上である必要があります: {k}")
    needed = _required_index(kind, k)
    if bernoulli is None:
        bernoulli = bernoulli_table(needed)
    if bernoulli.max_order < needed:
        raise BernoulliTableTooShortError(
            f"{kind.value}の次数{k}にはB_{needed}まで必要ですが、表はB_{bernoulli.max_order}までです"
        )
    return _build_kernel(kind, k, bernoulli)


@lru_cache(maxsize=256)
def _mp_coeffs(p: KernelPoly, prec: int) -> tuple[mpf, ...]:
    with mp.workprec(prec):
        return tuple(mpf(c.numerator) / c.denominator for c in p.coeffs)


def kernel_eval(p: KernelPoly, u: Fraction | int | float | complex | mpf) -> Fraction | mpf:
    """カーネルを(1-u)についてHorner法で評価する

    uがFractionかintなら厳密に、それ以外は現在のmpmath精度で評価する。
    """
    if isinstance(u, (Fraction, int)):
        t = 1 - Fraction(u)
        acc = Fraction(0)
        for c in reversed(p.coeffs):
            acc = acc * t + c
        return acc
    return horner(_mp_coeffs(p, mp.prec), 1 - mp.mpmathify(u))


def horner(coeffs: tuple[Any, ...], t: Any) -> Any:
    """sum coeffs[p] t^p"""
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def kernel_difference_quotient(p: KernelPoly, s: Any) -> tuple[Any, ...]:
    """(K(u) - K(s)) / (u - s) の(1-u)についての係数

    組立除法で割るので、u = s の近くでも桁落ちしない。u = s での値はK'(s)。
    """
    coeffs = _mp_coeffs(p, mp.prec)
    if len(coeffs) == 1:
        return (mpf(0),)
    t_s = 1 - mp.mpmathify(s)
    quotient = [mpf(0)] * (len(coeffs) - 1)
    quotient[-1] = coeffs[-1]
    for i in range(len(coeffs) - 2, 0, -1):
        quotient[i - 1] = coeffs[i] + t_s * quotient[i]
    # (1-u) - (1-s) = -(u - s)
    return tuple(-q for q in quotient)


@dataclass(frozen=True)
class TruncatedSeries:
    """xのべき級数をx^Nで打ち切ったもの

    Args:
        coefficients (tuple[Fraction, ...]): c_0..c_N
    """

    coefficients: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        """打ち切り次数N"""
        return len(self.coefficients) - 1

    @classmethod
    def from_terms(cls, term: Callable[[int], Fraction], order: int) -> TruncatedSeries:
        """i番目の係数を返す関数から作る"""
        return cls(tuple(term(i) for i in range(order + 1)))

    def coefficient(self, i: int) -> Fraction:
        """x^iの係数"""
        return self.coefficients[i]

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        """打ち切り次数の小さい方に合わせた積"""
        order = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        coefficients = (sum((a[j] * b[i - j] for j in range(i + 1)), Fraction(0)) for i in range(order + 1))
        return TruncatedSeries(tuple(coefficients))

    def inverse(self) -> TruncatedSeries:
        """逆数の級数"""
        c0 = self.coefficients[0]
        if c0 == 0:
            raise ZeroDivisionError("定数項が0の級数は逆数を持ちません")
        inv = [1 / c0]
        for i in range(1, self.order + 1):
            s = sum((self.coefficients[j] * inv[i - j] for j in range(1, i + 1)), Fraction(0))
            inv.append(-s / c0)
        return TruncatedSeries(tuple(inv))

    def __truediv__(self, other: TruncatedSeries) -> TruncatedSeries:
        """除算（逆数との積）"""
        return self * other.inverse()


def _alternating(i: int, parity: int) -> int:
    # x^iの係数がi % 2 == parityのときだけ非零になる三角関数級数の符号
    return (-1) ** ((i - parity) // 2)


def _cos_series(t: Fraction, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_terms(
        lambda i: Fraction(_alternating(i, 0)) * t**i / factorial(i) if i % 2 == 0 else Fraction(0), order
    )


def _sin_series(t: Fraction, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_terms(
        lambda i: Fraction(_alternating(i, 1)) * t**i / factorial(i) if i % 2 == 1 else Fraction(0), order
    )


def _exp_series(t: Fraction, order: int) -> TruncatedSeries:
    return TruncatedSeries.from_terms(lambda i: t**i / factorial(i), order)


def _sinc_series(order: int) -> TruncatedSeries:
    # sin(x)/x
    return TruncatedSeries.from_terms(
        lambda i: Fraction(_alternating(i, 0), factorial(i + 1)) if i % 2 == 0 else Fraction(0), order
    )


def _expm1_over_x_series(order: int) -> TruncatedSeries:
    # (e^x - 1)/x
    return TruncatedSeries.from_terms(lambda i: Fraction(1, factorial(i + 1)), order)


def taylor_oracle(kind: KernelKind, k: int, u: Fraction | int) -> Fraction:
    """生成関数のTaylor係数からカーネルの値を求める

    x cos(x(1-u))/sin(x), x sin(x(1-u))/sin(x), x e^{x(1-u)}/(e^x - 1) を
    分母を正規化したうえで打ち切り級数の除算で展開する。

    Args:
        kind (KernelKind): SINE_EVEN, SINE_ODD, EXPのいずれか
        k (int): 次数
        u (Fraction | int): 評価点

    Returns:
        Fraction: kernel_eval(kernel(kind, k), u)と一致するはずの値
    """
    t = 1 - Fraction(u)
    if kind is KernelKind.SINE_EVEN:
        power = 2 * k
        series = _cos_series(t, power + 2) / _sinc_series(power + 2)
        return (-1) ** k * series.coefficient(power)
    if kind is KernelKind.SINE_ODD:
        power = 2 * k + 1
        series = _sin_series(t, power + 2) / _sinc_series(power + 2)
        return (-1) ** k * series.coefficient(power)
    if kind is KernelKind.EXP:
        series = _exp_series(t, k + 2) / _expm1_over_x_series(k + 2)
        return series.coefficient(k)
    raise ValueError(f"{kind.value}は生成関数を持ちません")
