"""厳密な有理数演算を提供するモジュール

Bernoulli数とFaulhaberのべき乗和公式を有理数（fractions.Fraction）で計算する。
カーネル多項式の係数と、級数恒等式の検算の両方に使う。
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


@dataclass(frozen=True)
class BernoulliTable:
    """Bernoulli数B_0..B_max_orderの表（B_1 = -1/2の規約）

    Args:
        values (tuple[Fraction, ...]): index jにB_jを持つ
    """

    values: tuple[Fraction, ...]

    @property
    def max_order(self) -> int:
        """表に含まれる最大の添字"""
        return len(self.values) - 1

    def __getitem__(self, j: int) -> Fraction:
        """B_jを返す"""
        return self.values[j]

    def __len__(self) -> int:
        """表の長さ"""
        return len(self.values)


def _general_faulhaber(i: int, n: Fraction, values: tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for j in range(i + 1):
        total += Fraction((-1) ** j * factorial(i) * values[j], factorial(i + 1 - j) * factorial(j)) * n ** (i + 1 - j)
    return total


@lru_cache(maxsize=None)
def bernoulli_table(max_order: int) -> BernoulliTable:
    """Bernoulli数の表を漸化式で作る

    sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1) を順に解く。

    Args:
        max_order (int): 最大の添字（0以上）

    Returns:
        BernoulliTable: B_0..B_max_order
    """
    if max_order < 0:
        raise ValueError(f"max_orderは0以上である必要があります: {max_order}")
    values = [Fraction(1)]
    for m in range(1, max_order + 1):
        s = sum((comb(m + 1, j) * values[j] for j in range(m)), Fraction(0))
        values.append(-s / (m + 1))
    # 符号規約の確認: 一般形のFaulhaber公式で 1 + 2 = 3 が再現できること
    if max_order >= 1 and _general_faulhaber(1, Fraction(2), tuple(values)) != 3:
        raise ArithmeticError("Bernoulli数の符号規約がFaulhaber公式と一致しません")
    return BernoulliTable(tuple(values))


def faulhaber(p: int, n: Fraction | int) -> Fraction:
    """一般形のFaulhaber公式で sum_{k=1}^{n} k^p を計算する

    Args:
        p (int): べき指数
        n (Fraction | int): 上限。有理数でも多項式として評価する

    Returns:
        Fraction: べき乗和
    """
    if p < 0:
        raise ValueError(f"pは0以上である必要があります: {p}")
    return _general_faulhaber(p, Fraction(n), bernoulli_table(p).values)


def faulhaber_even(i: int, n: Fraction | int) -> Fraction:
    """偶数べき sum_{k=1}^{n} k^{2i} を偶奇分割した公式で計算する

    Args:
        i (int): 指数の半分（0以上）
        n (Fraction | int): 上限

    Returns:
        Fraction: べき乗和
    """
    if i < 0:
        raise ValueError(f"iは0以上である必要があります: {i}")
    n = Fraction(n)
    table = bernoulli_table(2 * i)
    # B_1の項 n^{2i}/2 は 2i >= 1 のときだけ現れる
    total = n ** (2 * i) / 2 if i > 0 else Fraction(0)
    for j in range(i + 1):
        coeff = Fraction(factorial(2 * i), factorial(2 * j) * factorial(2 * i + 1 - 2 * j))
        total += coeff * table[2 * j] * n ** (2 * i + 1 - 2 * j)
    return total


def faulhaber_odd(i: int, n: Fraction | int) -> Fraction:
    """奇数べき sum_{k=1}^{n} k^{2i+1} を偶奇分割した公式で計算する

    Args:
        i (int): (指数-1)/2（0以上）
        n (Fraction | int): 上限

    Returns:
        Fraction: べき乗和
    """
    if i < 0:
        raise ValueError(f"iは0以上である必要があります: {i}")
    n = Fraction(n)
    table = bernoulli_table(2 * i)
    total = n ** (2 * i + 1) / 2
    for j in range(i + 1):
        coeff = Fraction(factorial(2 * i + 1), factorial(2 * j) * factorial(2 * i + 2 - 2 * j))
        total += coeff * table[2 * j] * n ** (2 * i + 2 - 2 * j)
    return total


def power_sum_oracle(p: int, n: int) -> Fraction:
    """sum_{k=1}^{n} k^p を項ごとに足し上げる"""
    if p < 0 or n < 1:
        raise ValueError(f"p >= 0, n >= 1 である必要があります: p={p}, n={n}")
    return Fraction(sum(k**p for k in range(1, n + 1)))
