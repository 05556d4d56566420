"""部分Fourier和 C^m_k = sum cos(2π(aj+b)/m)/(aj+b)^k, S^m_k = sum sin(...)/(aj+b)^k の閉形式

x = 2π/m, N = an + b とおくと、いずれも
  HP_j(n)の線形結合 + 境界項（cos, sinのTaylor残り）+ ∫ (1-u)^p (...) cot(πau/m) du
の形になる。HP_j(n)はHPTableで一度だけ計算する。
"""

from __future__ import annotations

from logging import getLogger
from math import factorial
from typing import Any, Callable

from mpmath import mp

from errors import ValidationError
from kernels import KernelKind, kernel
from quadrature import CotKind, ExpSum, IntegrandSpec, QuadratureResult
from settings import DEFAULT_SETTINGS, Settings

from .numeric import cos_tail, exact_cos_sin_2pi, ratio, sin_tail, to_mp
from .params import FourierParams
from .progression import INTEGRAL_TOL_FACTOR, HPTable, run_integral

logger = getLogger(__name__)


def _check_parity(name: str, f: FourierParams, odd: bool) -> None:
    if (f.base.k % 2 == 1) != odd:
        raise ValidationError(f"{name}は{'奇' if odd else '偶'}数次専用です: k={f.base.k}")


def fourier_tol(f: FourierParams, config: Settings) -> float:
    """最大の項の大きさに合わせた絶対許容誤差

    複素数のmではcos, sinが端点で e^{|Im 2π(aj+b)/m|} 程度まで大きくなる。
    """
    p = f.base
    x = 2 * mp.pi / to_mp(f.m)
    growth = max(mp.exp(abs(mp.im(x * (p.a * j + p.b)))) for j in (1, p.n))
    return config.tol * float(growth) / float(p.min_abs_denominator) ** p.k


class _FourierParts:
    """各公式で共通に使う量"""

    def __init__(self, f: FourierParams, config: Settings, trace: list[QuadratureResult] | None) -> None:
        p = f.base
        self.f = f
        self.p = p
        self.config = config
        self.trace = trace
        self.x = 2 * mp.pi / to_mp(f.m)
        self.big_n = p.last_denominator
        self.hp = HPTable(p, config, trace)
        # mが有理数のときのcos, sin(2πN/m), cos, sin(2πb/m)の厳密値
        self.trig_n = exact_cos_sin_2pi(ratio(self.big_n, f.m))
        self.trig_b = exact_cos_sin_2pi(ratio(p.b, f.m))

    def boundary(self, tail: Callable[..., Any], order: int, use_sin: bool) -> Any:
        """½N^{-k} tail(xN) - [b≠0] ½b^{-k} tail(xb)"""
        k = self.p.k
        idx = 1 if use_sin else 0
        value = tail(self.x * self.big_n, order, self.trig_n[idx]) / (2 * to_mp(self.big_n) ** k)
        if self.p.b != 0:
            value -= tail(self.x * self.p.b, order, self.trig_b[idx]) / (2 * to_mp(self.p.b) ** k)
        return value

    def integral(self, power: int, cosine: bool, prefactor: Any, name: str) -> Any:
        """prefactor ∫ (1-u)^power (wave(xNu) - wave(xbu)) cot(πau/m) du"""
        wave = ExpSum.cos if cosine else ExpSum.sin
        numerator = wave(self.x * self.big_n)
        if self.p.b != 0 or cosine:
            numerator = numerator - wave(self.x * self.p.b)
        spec = IntegrandSpec(
            numerator,
            CotKind.TRIG_COT,
            mp.pi * self.p.a / to_mp(self.f.m),
            kernel(KernelKind.MONOMIAL, power),
            prefactor,
            label=f"{name} {self.p} m={self.f.m}",
        )
        tol = fourier_tol(self.f, self.config) * INTEGRAL_TOL_FACTOR
        return run_integral(spec, tol, self.config, self.trace)

    def finish(self, value: Any) -> Any:
        """mが実数なら実部を返す"""
        if mp.im(to_mp(self.f.m)) == 0:
            return mp.re(value)
        return value


def _evaluate(
    f: FourierParams,
    config: Settings | None,
    trace: list[QuadratureResult] | None,
    body: Callable[[_FourierParts], Any],
) -> Any:
    config = config or DEFAULT_SETTINGS
    with mp.workdps(config.dps):
        parts = _FourierParts(f, config, trace)
        value = parts.finish(body(parts))
        logger.debug("%s m=%s: HP材料 %d 個", f.base, f.m, len(parts.hp))
        return value


def fourier_c_even(
    f: FourierParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> Any:
    """C^m_{2K}(a, b, n)

    sum_{j=1}^{K} (-1)^{K-j} x^{2K-2j}/(2K-2j)! HP_{2j}
    + 境界項(cos残り, 次数K) + (-1)^K x^{2K}/(2(2K-1)!) ∫ (1-u)^{2K-1} (sin xNu - sin xbu) cot du

    Args:
        f (FourierParams): kが偶数のパラメータ
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        Any: 和の値（mが実数ならmpf）
    """
    _check_parity("fourier_c_even", f, odd=False)
    big_k = f.base.k // 2

    def body(parts: _FourierParts) -> Any:
        x = parts.x
        value = mp.fsum(
            (-1) ** (big_k - j) * x ** (2 * big_k - 2 * j) / factorial(2 * big_k - 2 * j) * parts.hp[2 * j]
            for j in range(1, big_k + 1)
        )
        value += parts.boundary(cos_tail, big_k, use_sin=False)
        prefactor = (-1) ** big_k * x ** (2 * big_k) / (2 * factorial(2 * big_k - 1))
        return value + parts.integral(2 * big_k - 1, False, prefactor, "fourier_c_even")

    return _evaluate(f, config, trace, body)


def fourier_s_odd(
    f: FourierParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> Any:
    """S^m_{2K+1}(a, b, n)

    sum_{j=1}^{K} (-1)^{K-j} x^{2K+1-2j}/(2K+1-2j)! HP_{2j}
    + 境界項(sin残り, 次数K) + (-1)^K x^{2K+1}/(2(2K)!) ∫ (1-u)^{2K} (sin xNu - sin xbu) cot du
    """
    _check_parity("fourier_s_odd", f, odd=True)
    big_k = f.base.k // 2

    def body(parts: _FourierParts) -> Any:
        x = parts.x
        value = mp.fsum(
            (-1) ** (big_k - j) * x ** (2 * big_k + 1 - 2 * j) / factorial(2 * big_k + 1 - 2 * j) * parts.hp[2 * j]
            for j in range(1, big_k + 1)
        )
        value += parts.boundary(sin_tail, big_k, use_sin=True)
        prefactor = (-1) ** big_k * x ** (2 * big_k + 1) / (2 * factorial(2 * big_k))
        return value + parts.integral(2 * big_k, False, prefactor, "fourier_s_odd")

    return _evaluate(f, config, trace, body)


def fourier_c_odd(
    f: FourierParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> Any:
    """C^m_{2K+1}(a, b, n)

    sum_{j=0}^{K} (-1)^{K-j} x^{2K-2j}/(2K-2j)! HP_{2j+1}
    + 境界項(cos残り, 次数K) + (-1)^K x^{2K+1}/(2(2K)!) ∫ (1-u)^{2K} (cos xNu - cos xbu) cot du
    """
    _check_parity("fourier_c_odd", f, odd=True)
    big_k = f.base.k // 2

    def body(parts: _FourierParts) -> Any:
        x = parts.x
        value = mp.fsum(
            (-1) ** (big_k - j) * x ** (2 * big_k - 2 * j) / factorial(2 * big_k - 2 * j) * parts.hp[2 * j + 1]
            for j in range(big_k + 1)
        )
        value += parts.boundary(cos_tail, big_k, use_sin=False)
        prefactor = (-1) ** big_k * x ** (2 * big_k + 1) / (2 * factorial(2 * big_k))
        return value + parts.integral(2 * big_k, True, prefactor, "fourier_c_odd")

    return _evaluate(f, config, trace, body)


def fourier_s_even(
    f: FourierParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> Any:
    """S^m_{2K}(a, b, n)

    -sum_{j=0}^{K-1} (-1)^{K-j} x^{2K-1-2j}/(2K-1-2j)! HP_{2j+1}
    + 境界項(sin残り, 次数K-1) - (-1)^K x^{2K}/(2(2K-1)!) ∫ (1-u)^{2K-1} (cos xNu - cos xbu) cot du
    """
    _check_parity("fourier_s_even", f, odd=False)
    big_k = f.base.k // 2

    def body(parts: _FourierParts) -> Any:
        x = parts.x
        value = -mp.fsum(
            (-1) ** (big_k - j) * x ** (2 * big_k - 1 - 2 * j) / factorial(2 * big_k - 1 - 2 * j) * parts.hp[2 * j + 1]
            for j in range(big_k)
        )
        value += parts.boundary(sin_tail, big_k - 1, use_sin=True)
        prefactor = -((-1) ** big_k) * x ** (2 * big_k) / (2 * factorial(2 * big_k - 1))
        return value + parts.integral(2 * big_k - 1, True, prefactor, "fourier_s_even")

    return _evaluate(f, config, trace, body)


def fourier_c(f: FourierParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None) -> Any:
    """kの偶奇に合わせてC^m_kの公式を選ぶ"""
    if f.base.k % 2 == 0:
        return fourier_c_even(f, config, trace)
    return fourier_c_odd(f, config, trace)


def fourier_s(f: FourierParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None) -> Any:
    """kの偶奇に合わせてS^m_kの公式を選ぶ"""
    if f.base.k % 2 == 0:
        return fourier_s_even(f, config, trace)
    return fourier_s_odd(f, config, trace)
