"""直接和による検証用の参照値を提供するモジュール

閉形式の層とは数値計算のコードを共有しない。
パラメータはa, b, k, n, m などの属性を持つオブジェクトから読むだけで、
ORACLE_DPS桁でmpmath.fsumにより項を足し上げる。
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Any, Iterable, Union

from mpmath import mp, mpc, mpf

if TYPE_CHECKING:
    from closed_forms import FourierParams, LerchParams, ProgressionParams

ORACLE_DPS = 50

HighPrecScalar = Union[mpf, mpc]


def _mp(x: Any) -> Any:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


def _accumulate(terms: Iterable[Any], reverse: bool) -> HighPrecScalar:
    items = list(terms)
    if reverse:
        items.reverse()
    return mp.fsum(items)


def sum_hp(p: ProgressionParams, reverse: bool = False) -> HighPrecScalar:
    """sum_{j=1}^{n} 1/(aj+b)^k

    Args:
        p (ProgressionParams): パラメータ
        reverse (bool, optional): j = n から逆順に足す

    Returns:
        HighPrecScalar: 和
    """
    with mp.workdps(ORACLE_DPS):
        return _accumulate((mpf(p.a * j + p.b) ** -p.k for j in range(1, p.n + 1)), reverse)


def sum_fourier(f: FourierParams, kind: str, reverse: bool = False) -> HighPrecScalar:
    """sum_{j=1}^{n} cos(2π(aj+b)/m)/(aj+b)^k（kind = "sin" ならsin）

    Args:
        f (FourierParams): パラメータ
        kind (str): "cos" か "sin"
        reverse (bool, optional): 逆順に足す

    Returns:
        HighPrecScalar: 和（mが実数なら実数）
    """
    kind = str(getattr(kind, "value", kind))
    if kind not in ("cos", "sin"):
        raise ValueError(f"kindはcosかsinである必要があります: {kind}")
    p = f.base
    with mp.workdps(ORACLE_DPS):
        m = _mp(f.m)
        # cospi, sinpiは整数・半整数の引数で厳密に0, ±1を返す
        wave = mp.cospi if kind == "cos" else mp.sinpi
        terms = (wave(2 * (p.a * j + p.b) / m) / mpf(p.a * j + p.b) ** p.k for j in range(1, p.n + 1))
        return _accumulate(terms, reverse)


def sum_lerch(params: LerchParams, reverse: bool = False) -> HighPrecScalar:
    """sum_{j=1}^{n} e^{m(j+b)}/(j+b)^k

    Args:
        params (LerchParams): パラメータ
        reverse (bool, optional): 逆順に足す

    Returns:
        HighPrecScalar: 和
    """
    with mp.workdps(ORACLE_DPS):
        b, m = _mp(params.b), _mp(params.m)
        terms = (mp.exp(m * (j + b)) / (j + b) ** params.k for j in range(1, params.n + 1))
        return _accumulate(terms, reverse)


def sum_lagrange(kind: str, a: Any, b: Any, n: Any, big_k: int, reverse: bool = False) -> HighPrecScalar:
    """sum_{j=1}^{K} sin(2πn(aj+b)/K)（kind = "cos" ならcos）

    Args:
        kind (str): "sin" か "cos"
        a (Any): 実数
        b (Any): 実数
        n (Any): 実数
        big_k (int): 項数K
        reverse (bool, optional): 逆順に足す

    Returns:
        HighPrecScalar: 和
    """
    kind = str(getattr(kind, "value", kind))
    if kind not in ("cos", "sin"):
        raise ValueError(f"kindはcosかsinである必要があります: {kind}")
    with mp.workdps(ORACLE_DPS):
        a, b, n = _mp(a), _mp(b), _mp(n)
        wave = mp.cospi if kind == "cos" else mp.sinpi
        return _accumulate((wave(2 * n * (a * j + b) / big_k) for j in range(1, big_k + 1)), reverse)
