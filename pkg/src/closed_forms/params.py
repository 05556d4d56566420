"""閉形式の入力パラメータ"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Complex
from typing import Any

from errors import ValidationError


def _require_int(name: str, value: Any) -> int:
    # boolはintのサブクラスなので弾く
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value)
        raise ValidationError(f"{name}は整数である必要があります: {value!r}")
    return value


def _require_positive(name: str, value: Any) -> int:
    value = _require_int(name, value)
    if value < 1:
        raise ValidationError(f"{name}は1以上である必要があります: {value}")
    return value


@dataclass(frozen=True)
class ProgressionParams:
    """調和数列の部分和 HP_k(n) = sum_{j=1}^{n} 1/(aj+b)^k のパラメータ

    Args:
        a (int): 公差（0以外）
        b (int): シフト
        k (int): 次数（1以上）
        n (int): 項数（1以上）
    """

    a: int
    b: int
    k: int
    n: int

    def __post_init__(self) -> None:
        """整数性と分母が0にならないことをチェックする"""
        a = _require_int("a", self.a)
        b = _require_int("b", self.b)
        _require_positive("k", self.k)
        n = _require_positive("n", self.n)
        if a == 0:
            raise ValidationError("aは0以外である必要があります")
        # aj + b = 0 となるjは -b/a だけなので、範囲に入るかだけ見ればよい
        if b % a == 0 and 1 <= -b // a <= n:
            raise ValidationError(f"j = {-b // a} で分母 aj + b が0になります (a={a}, b={b}, n={n})")

    @property
    def last_denominator(self) -> int:
        """N = an + b"""
        return self.a * self.n + self.b

    @property
    def min_abs_denominator(self) -> int:
        """min_{1<=j<=n} |aj + b|（最大の項の分母）"""
        root = Fraction(-self.b, self.a)
        candidates = {1, self.n, int(root), int(root) + 1, int(root) - 1}
        return min(abs(self.a * j + self.b) for j in candidates if 1 <= j <= self.n)

    def with_order(self, k: int) -> ProgressionParams:
        """次数だけ変えたパラメータ"""
        return ProgressionParams(self.a, self.b, k, self.n)

    def with_n(self, n: int) -> ProgressionParams:
        """項数だけ変えたパラメータ"""
        return ProgressionParams(self.a, self.b, self.k, n)


@dataclass(frozen=True)
class FourierParams:
    """部分Fourier和 sum cos(2π(aj+b)/m)/(aj+b)^k のパラメータ

    Args:
        base (ProgressionParams): a, b, k, n
        m (Any): 周期。0以外の複素数（int, Fraction, float, complex, mpmathの数）
    """

    base: ProgressionParams
    m: Any

    def __post_init__(self) -> None:
        """mが0でないことをチェックする"""
        if not isinstance(self.m, Complex) and not hasattr(self.m, "_mpf_") and not hasattr(self.m, "_mpc_"):
            raise ValidationError(f"mは数値である必要があります: {self.m!r}")
        if self.m == 0:
            raise ValidationError("mは0以外である必要があります")


@dataclass(frozen=True)
class LerchParams:
    """Lerch型の部分和 sum_{j=1}^{n} e^{m(j+b)}/(j+b)^k のパラメータ

    Args:
        b (Any): シフト（複素数可）
        k (int): 次数（1以上）
        m (Any): 指数の係数（複素数可）
        n (int): 項数（1以上）
    """

    b: Any
    k: int
    m: Any
    n: int

    def __post_init__(self) -> None:
        """j + b が0にならないことをチェックする"""
        _require_positive("k", self.k)
        n = _require_positive("n", self.n)
        b = complex(self.b)
        if b.imag == 0 and b.real == int(b.real) and 1 <= -int(b.real) <= n:
            raise ValidationError(f"j = {-int(b.real)} で分母 j + b が0になります (b={self.b}, n={n})")

    def progression(self, k: int | None = None) -> ProgressionParams:
        """bが整数のときの a = 1 の調和数列"""
        return ProgressionParams(1, _require_int("b", self.b), self.k if k is None else k, self.n)
