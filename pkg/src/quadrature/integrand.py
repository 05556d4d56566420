"""被積分関数の表現と、cot/cothの特異点の列挙を提供するモジュール

分子は指数関数の線形結合 sum c_i e^{r_i u} として持つ。
sin, cosもこの形に直すので、区間上の極の部分は指数積分で解析的に積分できる。
極を引いた残り（SmoothRemainder）は区間上で滑らかになる。
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import factorial
from typing import Any

from mpmath import mp, mpc, mpf

from errors import NearPoleError
from exact_core import bernoulli_table
from kernels import KernelPoly, horner, kernel_difference_quotient, kernel_eval

from .moments import pole_integral

# 極の近くで使う cot x - 1/x の級数の項数
GUARD_TERMS = 4


def _on_segment_tol() -> mpf:
    # 極が区間上にあるとみなす距離。作業精度の半分の桁まで
    return mpf(2) ** (-(mp.prec // 2))


@dataclass(frozen=True)
class ExpSum:
    """指数関数の線形結合 sum c_i e^{r_i u}

    Args:
        terms (tuple[tuple[Any, Any], ...]): (係数c_i, 指数r_i)の組
    """

    terms: tuple[tuple[Any, Any], ...] = ()

    @classmethod
    def exp(cls, rate: Any, coef: Any = 1) -> ExpSum:
        """c e^{r u}"""
        return cls(((mp.mpmathify(coef), mp.mpmathify(rate)),))

    @classmethod
    def sin(cls, freq: Any) -> ExpSum:
        """sin(w u) = (e^{iwu} - e^{-iwu}) / 2i"""
        w = mp.mpmathify(freq)
        half_i = mpc(0, 1) / 2
        return cls(((-half_i, mpc(0, 1) * w), (half_i, -mpc(0, 1) * w)))

    @classmethod
    def cos(cls, freq: Any) -> ExpSum:
        """cos(w u) = (e^{iwu} + e^{-iwu}) / 2"""
        w = mp.mpmathify(freq)
        return cls(((mpf(1) / 2, mpc(0, 1) * w), (mpf(1) / 2, -mpc(0, 1) * w)))

    def __add__(self, other: ExpSum) -> ExpSum:
        """和"""
        return ExpSum(self.terms + other.terms)

    def __sub__(self, other: ExpSum) -> ExpSum:
        """差"""
        return ExpSum(self.terms + tuple((-c, r) for c, r in other.terms))

    def __mul__(self, other: ExpSum) -> ExpSum:
        """積（指数を足し合わせて展開する）"""
        return ExpSum(tuple((c1 * c2, r1 + r2) for c1, r1 in self.terms for c2, r2 in other.terms))

    def __call__(self, u: Any) -> Any:
        """uでの値"""
        return mp.fsum(c * mp.exp(r * u) for c, r in self.terms)

    def magnitude(self, u: Any) -> Any:
        """項ごとの絶対値の和。打ち消し合いの判定に使う"""
        return mp.fsum(abs(c * mp.exp(r * u)) for c, r in self.terms)

    def combined(self) -> ExpSum:
        """同じ指数の項をまとめ、係数が0の項を落とす"""
        collected: dict[tuple[Any, Any], tuple[Any, Any]] = {}
        for c, r in self.terms:
            key = (mp.re(r), mp.im(r))
            total = collected[key][0] + c if key in collected else c
            collected[key] = (total, r)
        return ExpSum(tuple((c, r) for c, r in collected.values() if c != 0))

    @property
    def is_zero(self) -> bool:
        """恒等的に0かどうか（係数がすべて0、または同じ指数の項が打ち消し合う）"""
        return not self.combined().terms


class CotKind(Enum):
    """特異因子の種類"""

    # cot(scale * u)
    TRIG_COT = "trig_cot"
    # coth(scale * u)
    HYPER_COTH = "hyper_coth"


@dataclass(frozen=True)
class IntegrandSpec:
    """prefactor * kernel(u) * numerator(u) * cot(scale * u) の形の被積分関数

    Args:
        numerator (ExpSum): 分子
        cot_kind (CotKind): cotかcothか
        scale (Any): cot/cothの引数の係数
        kernel (KernelPoly): (1-u)の多項式
        prefactor (Any): 積分全体に掛かる定数
        label (str): ログ用の名前
    """

    numerator: ExpSum
    cot_kind: CotKind
    scale: Any
    kernel: KernelPoly
    prefactor: Any = 1
    label: str = field(default="", compare=False)

    def cot_factor(self, u: Any) -> Any:
        """cot(scale u)またはcoth(scale u)"""
        if self.cot_kind is CotKind.TRIG_COT:
            return mp.cot(self.scale * u)
        return mp.coth(self.scale * u)


def _distance_to_segment(u: Any) -> Any:
    re, im = mp.re(u), mp.im(u)
    if 0 <= re <= 1:
        return abs(im)
    return abs(u) if re < 0 else abs(u - 1)


def singular_points(spec: IntegrandSpec, delta_pole: float = 1e-3) -> list[mpf]:
    """[0, 1]上のcot/cothの極を列挙する

    TRIG_COTの区間上の極はu = 0を含めてすべて特異点として返す（分子が0になる前提）。
    HYPER_COTHはu = 0以外の極が区間に近づいた時点で拒否する。

    Args:
        spec (IntegrandSpec): 被積分関数
        delta_pole (float, optional): 区間からこの距離以内の極はNEAR_POLEとして拒否する

    Returns:
        list[mpf]: 昇順の特異点
    """
    c = mp.mpmathify(spec.scale)
    if c == 0 or not mp.isfinite(c):
        raise ValueError(f"scaleは有限の非零である必要があります: {spec.scale}")
    # cot(cu)の極は cu = jπ、coth(cu)の極は cu = ijπ
    step = mp.pi / c if spec.cot_kind is CotKind.TRIG_COT else mpc(0, 1) * mp.pi / c
    j_max = int(mp.ceil((1 + delta_pole) / abs(step))) + 1
    tol = _on_segment_tol()
    points = [mpf(0)]
    for j in range(-j_max, j_max + 1):
        if j == 0:
            continue
        u = j * step
        dist = _distance_to_segment(u)
        re = mp.re(u)
        on_segment = abs(mp.im(u)) <= tol and -tol <= re <= 1 + tol
        if on_segment and spec.cot_kind is CotKind.TRIG_COT:
            points.append(min(max(re, mpf(0)), mpf(1)))
        elif on_segment or dist < delta_pole:
            name = spec.label or spec.cot_kind.value
            raise NearPoleError(f"{name}: 極 u = {mp.nstr(u, 10)} が積分区間に近すぎます")
    return sorted(set(points))


def _guard_coefficients(cot_kind: CotKind) -> tuple[mpf, ...]:
    # cot x - 1/x = sum (-1)^j 2^{2j} B_{2j} x^{2j-1}/(2j)!（cothは符号なし）
    bernoulli = bernoulli_table(2 * GUARD_TERMS)
    coeffs = []
    for j in range(1, GUARD_TERMS + 1):
        c = 2 ** (2 * j) * bernoulli[2 * j] / factorial(2 * j)
        value = mpf(c.numerator) / c.denominator
        coeffs.append(-value if cot_kind is CotKind.TRIG_COT and j % 2 else value)
    return tuple(coeffs)


class SmoothRemainder:
    """kernel(u) cot(scale u) から区間上の極 K(s)/(scale (u - s)) を引いた残り

    h(u) = K(u) (cot(cu) - sum_s 1/(c(u-s))) + sum_s (K(u) - K(s))/(c(u-s))

    と分けて評価する。極から eps_switch 以内では cot x - 1/x を級数で求める。

    Args:
        spec (IntegrandSpec): 被積分関数
        points (list[mpf]): 区間上の特異点
        eps_switch (float): 級数に切り替える距離
    """

    def __init__(self, spec: IntegrandSpec, points: list[mpf], eps_switch: float) -> None:
        self.spec = spec
        self.points = points
        self.scale = mp.mpmathify(spec.scale)
        self.eps_switch = mpf(eps_switch)
        self.guard = _guard_coefficients(spec.cot_kind)
        self.quotients = [kernel_difference_quotient(spec.kernel, s) for s in points]

    def _nearest(self, u: Any) -> mpf | None:
        for s in self.points:
            if abs(u - s) < self.eps_switch:
                return s
        return None

    def cot_without_poles(self, u: Any) -> Any:
        """cot(cu) - sum_s 1/(c(u-s))"""
        c = self.scale
        near = self._nearest(u)
        if near is None:
            value = self.spec.cot_factor(u)
        else:
            x = c * (u - near)
            value = x * horner(self.guard, x * x)
        return value - mp.fsum(1 / (c * (u - s)) for s in self.points if s is not near)

    def __call__(self, u: Any) -> Any:
        """h(u)"""
        t = 1 - u
        quotient = mp.fsum(horner(q, t) for q in self.quotients) / self.scale
        return kernel_eval(self.spec.kernel, u) * self.cot_without_poles(u) + quotient

    def pole_part(self) -> Any:
        """sum_s K(s)/c ∫_0^1 numerator(u)/(u - s) du"""
        terms = self.spec.numerator.terms
        return mp.fsum(kernel_eval(self.spec.kernel, s) / self.scale * pole_integral(terms, s) for s in self.points)
