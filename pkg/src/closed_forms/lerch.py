"""Lerch型の部分和 sum_{j=1}^{n} e^{m(j+b)}/(j+b)^k と多重対数の部分和の閉形式

a = 1, N = n + b として
  sum_{j=1}^{k} m^{k-j}/(k-j)! HP_j(n)
  + (e^{mN} の k 次Taylor残り)/(2N^k) - [b≠0] (e^{mb} の k 次Taylor残り)/(2b^k)
  + m^k/(2(k-1)!) ∫ (1-u)^{k-1} (e^{mNu} - e^{mbu}) coth(mu/2) du
で計算する。
"""

from __future__ import annotations

from logging import getLogger
from math import factorial
from typing import Any

from mpmath import mp

from kernels import KernelKind, kernel
from quadrature import CotKind, ExpSum, IntegrandSpec, QuadratureResult
from settings import DEFAULT_SETTINGS, Settings

from .numeric import as_fraction, exp_tail, to_mp
from .params import LerchParams, ProgressionParams
from .progression import INTEGRAL_TOL_FACTOR, HPTable, run_integral

logger = getLogger(__name__)


class ShiftedHarmonic:
    """a = 1, シフトbの HP_j(n) = sum_{i=1}^{n} 1/(i+b)^j を次数ごとに返す

    b = p/q（q <= max_shift_denominator）なら HP_j(n) = q^j HP_j(a=q, b=p) として整数の閉形式に帰着する。
    それ以外のbはHurwitzのゼータ関数（j = 1 はディガンマ関数）の差で求める。

    Args:
        b (Any): シフト
        n (int): 項数
        config (Settings): 設定
        trace (list[QuadratureResult] | None): 積分結果の記録先
    """

    def __init__(self, b: Any, n: int, config: Settings, trace: list[QuadratureResult] | None) -> None:
        self.b = b
        self.n = n
        self.config = config
        frac = as_fraction(b, config.max_shift_denominator)
        self.shift = frac
        self.table: HPTable | None = None
        if frac is not None:
            base = ProgressionParams(frac.denominator, frac.numerator, 1, n)
            self.table = HPTable(base, config, trace)
        else:
            logger.warning("シフト b = %s は有理数として扱えないため、Hurwitzゼータ関数で代用します", b)

    def __getitem__(self, j: int) -> Any:
        """HP_j(n)"""
        if self.table is not None and self.shift is not None:
            return mp.mpf(self.shift.denominator) ** j * self.table[j]
        shift = to_mp(self.b)
        if j == 1:
            return mp.digamma(self.n + 1 + shift) - mp.digamma(1 + shift)
        return mp.zeta(j, 1 + shift) - mp.zeta(j, self.n + 1 + shift)


def _min_abs_shifted(b: Any, n: int) -> Any:
    # min_{1<=j<=n} |j + b|
    re = mp.re(b)
    candidates = {1, n, int(mp.floor(-re)), int(mp.ceil(-re))}
    return min(abs(j + b) for j in candidates if 1 <= j <= n)


def lerch_tol(params: LerchParams, config: Settings) -> float:
    """最大の項の大きさ max|e^{m(j+b)}| / min|j+b|^k に合わせた絶対許容誤差"""
    b, m = to_mp(params.b), to_mp(params.m)
    growth = max(abs(mp.exp(m * (j + b))) for j in (1, params.n))
    return config.tol * float(growth / _min_abs_shifted(b, params.n) ** params.k)


def null_denominator_pair(b: Any, k: int, m: Any, config: Settings | None = None) -> Any:
    """b → 0 で消える境界項の組 -e^{mb}/(2b^k) + (1/(2b^k)) sum_{j=0}^{k} (mb)^j/j!

    b = 0 では公式からこの組を丸ごと落とす。Taylor残りで計算するので小さいbでも桁落ちしない。

    Args:
        b (Any): シフト（0以外）
        k (int): 次数
        m (Any): 指数の係数
        config (Settings | None, optional): 設定

    Returns:
        Any: 組の値
    """
    config = config or DEFAULT_SETTINGS
    with mp.workdps(config.dps):
        b, m = to_mp(b), to_mp(m)
        return -exp_tail(m * b, k) / (2 * b**k)


def _is_real(*values: Any) -> bool:
    return all(mp.im(to_mp(v)) == 0 for v in values)


def lerch_partial(
    params: LerchParams, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> Any:
    """Lerch型の部分和 sum_{j=1}^{n} e^{m(j+b)}/(j+b)^k

    |m| < eps_m のときは積分の係数 m^k が消えて HP_k(n) に一致するので、それを返す。

    Args:
        params (LerchParams): パラメータ
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        Any: 和の値（mとbが実数ならmpf）
    """
    config = config or DEFAULT_SETTINGS
    k = params.k
    with mp.workdps(config.dps):
        b, m = to_mp(params.b), to_mp(params.m)
        hp = ShiftedHarmonic(params.b, params.n, config, trace)
        if abs(m) < config.eps_m:
            logger.info("|m| = %s < eps_m なので HP_%d(n) を返します", mp.nstr(abs(m), 5), k)
            value = hp[k]
        else:
            big_n = params.n + b
            value = mp.fsum(m ** (k - j) / factorial(k - j) * hp[j] for j in range(1, k + 1))
            value += exp_tail(m * big_n, k) / (2 * big_n**k)
            if b != 0:
                value -= exp_tail(m * b, k) / (2 * b**k)
            numerator = ExpSum.exp(m * big_n) - ExpSum.exp(m * b)
            spec = IntegrandSpec(
                numerator,
                CotKind.HYPER_COTH,
                m / 2,
                kernel(KernelKind.MONOMIAL, k - 1),
                m**k / (2 * factorial(k - 1)),
                label=f"lerch b={params.b} k={k} m={params.m} n={params.n}",
            )
            value += run_integral(spec, lerch_tol(params, config) * INTEGRAL_TOL_FACTOR, config, trace)
        if _is_real(params.b, params.m):
            return mp.re(value)
        return value


def polylog_partial(
    k: int, m: Any, n: int, config: Settings | None = None, trace: list[QuadratureResult] | None = None
) -> Any:
    """多重対数の部分和 sum_{j=1}^{n} e^{mj}/j^k（lerch_partialのb = 0）

    Args:
        k (int): 次数
        m (Any): 指数の係数
        n (int): 項数
        config (Settings | None, optional): 設定
        trace (list[QuadratureResult] | None, optional): 積分結果の記録先

    Returns:
        Any: 和の値
    """
    return lerch_partial(LerchParams(0, k, m, n), config, trace)
