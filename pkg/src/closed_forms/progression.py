"""調和数列の部分和 HP_k(n) = sum_{j=1}^{n} 1/(aj+b)^k の閉形式

いずれの公式も境界項と[0, 1]上の積分1本（漸化式は次数ごとに1本）で、
積分の手間はnに依らない。N = an + b と書く。
b = 0 のときは 1/b^k を含む項をまとめて落とす。
"""

from __future__ import annotations

from enum import Enum
from logging import getLogger
from math import factorial
from typing import Any

from mpmath import mp, mpc, mpf

from errors import InternalConsistencyError, ValidationError
from kernels import KernelKind, kernel
from quadrature import CotKind, ExpSum, IntegrandSpec, QuadratureResult, integrate
from settings import DEFAULT_SETTINGS, Settings

from .params import ProgressionParams

logger = getLogger(__name__)

# 全体の許容誤差に対して、積分1本と材料のHP値に割り当てる割合
INTEGRAL_TOL_FACTOR = 1e-1
RECURSION_TOL_FACTOR = 1e-3
INGREDIENT_TOL_FACTOR = 1e-2


class IntegrandForm(Enum):
    """正弦型公式の被積分関数の形"""

    # sin 2πNu - sin 2πbu（cosなら差）
    SUM = "sum"
    # 積和公式で積に直した形
    PRODUCT = "product"


def absolute_tol(p: ProgressionParams, config: Settings) -> float:
    """相対許容誤差を最大の項 1/min|aj+b|^k で絶対値に直す"""
    return config.tol / float(p.min_abs_denominator) ** p.k


def boundary_terms(p: ProgressionParams, k: int | None = None) -> mpf:
    """-1/(2b^k) + 1/(2N^k)（b = 0 なら前者を落とす）"""
    k = p.k if k is None else k
    value = mpf(1) / (2 * mpf(p.last_denominator) ** k)
    if p.b != 0:
        value -= mpf(1) / (2 * mpf(p.b) ** k)
    return value


def run_integral(spec: IntegrandSpec, tol: float, config: Settings, trace: list[QuadratureResult] | None) -> Any:
    """積分してtraceに記録し、値を返す"""
    result = integrate(spec, tol, config)
    if trace is not None:
        trace.append(result)
    return result.value


def _sine_numerator(p: ProgressionParams, cosine: bool) -> ExpSum:
    # sin 2πNu - sin 2πbu または cos 2πNu - cos 2πbu
    wave = ExpSum.cos if cosine else ExpSum.sin
    numerator = wave(2 * mp.pi * p.last_denominator)
    if p.b != 0 or cosine:
        numerator = numerator - wave(2 * mp.pi * p.b)
    return numerator


def _product_numerator(p: ProgressionParams, outer_sine: bool) -> ExpSum:
    # cos(π(an+2b)u) sin(πanu) または sin(π(an+2b)u) sin(πanu)
    outer = ExpSum.sin if outer_sine else ExpSum.cos
    return outer(mp.pi * (p.a * p.n + 2 * p.b)) * ExpSum.sin(mp.pi * p.a * p.n)


def _config(config: Settings | None) -> Settings:
    return config or DEFAULT_SETTINGS


def hp_order1(
    p: ProgressionParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> mpf:
    """1次の閉形式 -1/(2b) + 1/(2N) + 2π ∫ (1-u) sin π(an+2b)u sin πanu cot πau du

    Args:
        p (ProgressionParams): k = 1 のパラメータ
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        mpf: HP_1(n)
    """
    if p.k != 1:
        raise ValidationError(f"hp_order1はk = 1専用です: k={p.k}")
    return hp_odd(p, IntegrandForm.PRODUCT, config, trace)


def hp_even(
    p: ProgressionParams,
    form: IntegrandForm = IntegrandForm.SUM,
    config: Settings | None = None,
    trace: list[QuadratureResult] | None = None,
) -> mpf:
    """偶数次 k = 2K の正弦型閉形式

    Args:
        p (ProgressionParams): kが偶数のパラメータ
        form (IntegrandForm, optional): 被積分関数の形
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        mpf: HP_k(n)
    """
    if p.k % 2 != 0:
        raise ValidationError(f"hp_evenは偶数次専用です: k={p.k}")
    config = _config(config)
    big_k = p.k // 2
    with mp.workdps(config.dps):
        sign = (-1) ** big_k
        if form is IntegrandForm.SUM:
            numerator = _sine_numerator(p, cosine=False)
            prefactor = -sign * (2 * mp.pi) ** p.k / 2
        else:
            numerator = _product_numerator(p, outer_sine=False)
            prefactor = -sign * (2 * mp.pi) ** p.k
        spec = IntegrandSpec(
            numerator,
            CotKind.TRIG_COT,
            mp.pi * p.a,
            kernel(KernelKind.SINE_EVEN, big_k),
            prefactor,
            label=f"hp_even[{form.value}] {p}",
        )
        integral = run_integral(spec, absolute_tol(p, config) * INTEGRAL_TOL_FACTOR, config, trace)
        return boundary_terms(p) + mp.re(integral)


def hp_odd(
    p: ProgressionParams,
    form: IntegrandForm = IntegrandForm.SUM,
    config: Settings | None = None,
    trace: list[QuadratureResult] | None = None,
) -> mpf:
    """奇数次 k = 2K+1 の正弦型閉形式

    Args:
        p (ProgressionParams): kが奇数のパラメータ
        form (IntegrandForm, optional): 被積分関数の形
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        mpf: HP_k(n)
    """
    if p.k % 2 != 1:
        raise ValidationError(f"hp_oddは奇数次専用です: k={p.k}")
    config = _config(config)
    big_k = p.k // 2
    with mp.workdps(config.dps):
        sign = (-1) ** big_k
        if form is IntegrandForm.SUM:
            numerator = _sine_numerator(p, cosine=True)
            prefactor = -sign * (2 * mp.pi) ** p.k / 2
        else:
            numerator = _product_numerator(p, outer_sine=True)
            prefactor = sign * (2 * mp.pi) ** p.k
        spec = IntegrandSpec(
            numerator,
            CotKind.TRIG_COT,
            mp.pi * p.a,
            kernel(KernelKind.SINE_ODD, big_k),
            prefactor,
            label=f"hp_odd[{form.value}] {p}",
        )
        integral = run_integral(spec, absolute_tol(p, config) * INTEGRAL_TOL_FACTOR, config, trace)
        return boundary_terms(p) + mp.re(integral)


def hp_exp(
    p: ProgressionParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> mpf:
    """偶奇共通の指数型閉形式

    -1/(2b^k) + 1/(2N^k) + i(2πi)^k/2 ∫ E_k(u) (e^{2πiNu} - e^{2πibu}) cot πau du

    複素数で計算し、虚部が残っていないことを確かめてから実部を返す。

    Args:
        p (ProgressionParams): パラメータ
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        mpf: HP_k(n)
    """
    config = _config(config)
    with mp.workdps(config.dps):
        two_pi_i = mpc(0, 2 * mp.pi)
        numerator = ExpSum.exp(two_pi_i * p.last_denominator) - ExpSum.exp(two_pi_i * p.b)
        spec = IntegrandSpec(
            numerator,
            CotKind.TRIG_COT,
            mp.pi * p.a,
            kernel(KernelKind.EXP, p.k),
            mpc(0, 1) * two_pi_i**p.k / 2,
            label=f"hp_exp {p}",
        )
        integral = run_integral(spec, absolute_tol(p, config) * INTEGRAL_TOL_FACTOR, config, trace)
        value = boundary_terms(p) + integral
        residual = abs(mp.im(value))
        if residual > config.imag_residual_bound:
            raise InternalConsistencyError(f"hp_exp {p}: 虚部が残っています (|Im| = {mp.nstr(residual, 5)})")
        return mp.re(value)


def _level_group(z: int, exponent: int, level: int) -> mpf:
    # (1/(2z^e)) sum_{j=0}^{L} (-1)^j (2πz)^{2j}/(2j+1)!
    total = mp.fsum((-1) ** j * (2 * mp.pi * z) ** (2 * j) / factorial(2 * j + 1) for j in range(level + 1))
    return total / (2 * mpf(z) ** exponent)


def _recursion_level(
    p: ProgressionParams,
    level: int,
    odd: bool,
    lower: dict[int, mpf],
    tol: float,
    config: Settings,
    trace: list[QuadratureResult] | None,
) -> mpf:
    exponent = 2 * level + int(odd)
    value = _level_group(p.last_denominator, exponent, level)
    if p.b != 0:
        value -= _level_group(p.b, exponent, level)
    # 下の次数の項。偶数列ではHP_0 = 0なのでj = 0は寄与しない
    value -= mp.fsum(
        (-1) ** (level - j) * (2 * mp.pi) ** (2 * level - 2 * j) / factorial(2 * level + 1 - 2 * j) * hp_j
        for j, hp_j in lower.items()
    )
    sign = (-1) ** level
    if odd:
        numerator = _product_numerator(p, outer_sine=True)
        prefactor = sign * (2 * mp.pi) ** exponent / factorial(exponent)
    else:
        numerator = _product_numerator(p, outer_sine=False)
        prefactor = -sign * (2 * mp.pi) ** exponent / factorial(exponent)
    spec = IntegrandSpec(
        numerator,
        CotKind.TRIG_COT,
        mp.pi * p.a,
        kernel(KernelKind.MONOMIAL, exponent),
        prefactor,
        label=f"hp_recursive[{exponent}] {p}",
    )
    return value + mp.re(run_integral(spec, tol, config, trace))


def hp_recursive(
    p: ProgressionParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> mpf:
    """漸化式でHP_kを求める

    同じ偶奇の次数を下から順に積み上げる。各段は境界項、下の次数の線形結合、
    単項式カーネル(1-u)^e の積分1本からなる。偶数列はHP_0 = 0から、奇数列はHP_1から始まる。

    Args:
        p (ProgressionParams): パラメータ
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        mpf: HP_k(n)
    """
    config = _config(config)
    odd = p.k % 2 == 1
    top = p.k // 2
    tol = absolute_tol(p, config) * RECURSION_TOL_FACTOR
    with mp.workdps(config.dps):
        values: dict[int, mpf] = {}
        for level in range(0 if odd else 1, top + 1):
            values[level] = _recursion_level(p, level, odd, dict(values), tol, config, trace)
            logger.debug("hp_recursive %s: HP_%d = %s", p, 2 * level + int(odd), mp.nstr(values[level], 20))
        return values[top]


class HPTable:
    """(a, b, n)を固定したHP_j(n)のメモ

    Fourier和とLerch和の材料として、同じ次数を二度計算しないようにする。
    呼び出しごとに作る使い捨ての表。

    Args:
        base (ProgressionParams): a, b, nを決めるパラメータ（kは使わない）
        config (Settings | None, optional): 設定。許容誤差は材料用に絞って使う
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先
    """

    def __init__(
        self, base: ProgressionParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
    ) -> None:
        config = _config(config)
        self.base = base
        self.config = config.replace(tol=config.tol * INGREDIENT_TOL_FACTOR)
        self.trace = trace
        self._values: dict[int, mpf] = {}

    def __len__(self) -> int:
        """計算済みの次数の数"""
        return len(self._values)

    def __getitem__(self, j: int) -> mpf:
        """HP_j(n)。j = 0 は0"""
        if j == 0:
            return mpf(0)
        if j not in self._values:
            self._values[j] = hp_exp(self.base.with_order(j), self.config, self.trace)
        else:
            logger.debug("HP_%d(%s) を再利用します", j, self.base)
        return self._values[j]
