"""指数関数の解析的な積分（Legendre多項式とのモーメント、極の部分の積分）

振動の速い e^{ru} は節点で解像せず、ここで求めた値を使って厳密に積分する。
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any

from mpmath import mp, mpf

# 漸化式で落ちる桁の分だけ精度を上げる
MOMENT_GUARD_DPS = 10
# |w|がこれ以下ならF(w)を超幾何級数で求める
SERIES_RADIUS = 2


def legendre_moments(z: Any, count: int) -> list[Any]:
    """∫_{-1}^{1} e^{zx} P_j(x) dx (j = 0, ..., count-1)

    2 i_j(z)（第1種変形球Bessel関数）に等しい。上の2つをbesseliで求め、
    i_{j-1} = i_{j+1} + (2j+1)/z i_j を下向きにたどる。

    Args:
        z (Any): 指数の係数（複素数可）
        count (int): 求める個数

    Returns:
        list[Any]: モーメントの列
    """
    if count < 1:
        raise ValueError(f"countは1以上である必要があります: {count}")
    z = mp.mpmathify(z)
    if z == 0:
        return [mpf(2)] + [mpf(0)] * (count - 1)
    # 右半平面で計算して (-1)^j を掛ける
    flip = mp.re(z) < 0
    if flip:
        z = -z
    with mp.workdps(mp.dps + MOMENT_GUARD_DPS):
        factor = mp.sqrt(2 * mp.pi / z)
        top = count - 1
        mu = [mpf(0)] * count
        mu[top] = factor * mp.besseli(top + mpf(1) / 2, z)
        if count > 1:
            mu[top - 1] = factor * mp.besseli(top - mpf(1) / 2, z)
        for j in range(top - 1, 0, -1):
            mu[j - 1] = mu[j + 1] + (2 * j + 1) / z * mu[j]
    if flip:
        mu = [-m if j % 2 else m for j, m in enumerate(mu)]
    return [+m for m in mu]


@lru_cache(maxsize=16)
def legendre_table(nodes: tuple[tuple[mpf, mpf], ...]) -> tuple[tuple[mpf, ...], ...]:
    """Gauss-Legendreの節点からLegendre係数を求める行列

    row j, column k は (2j+1)/2 w_k P_j(x_k)。節点での値に掛けると、
    節点を通る補間多項式のLegendre展開の係数になる。
    """
    count = len(nodes)
    rows = [[mpf(0)] * count for _ in range(count)]
    for k, (x, w) in enumerate(nodes):
        prev, cur = mpf(1), x
        rows[0][k] = w / 2
        if count > 1:
            rows[1][k] = 3 * w * x / 2
        for j in range(1, count - 1):
            prev, cur = cur, ((2 * j + 1) * x * cur - j * prev) / (j + 1)
            rows[j + 1][k] = (2 * j + 3) * w * cur / 2
    return tuple(tuple(row) for row in rows)


def expm1_integral(w: Any) -> Any:
    """F(w) = ∫_0^1 (e^{wt} - 1)/t dt = sum_{k>=1} w^k/(k k!)

    整関数。|w|が小さいときは w 2F2(1,1;2,2;w)、それ以外は指数積分で求める。
    """
    w = mp.mpmathify(w)
    if abs(w) <= SERIES_RADIUS:
        return w * mp.hyp2f2(1, 1, 2, 2, w)
    if mp.im(w) == 0 and mp.re(w) > 0:
        return mp.ei(w) - mp.euler - mp.log(w)
    # F(w) = -(E_1(-w) + log(-w) + γ)。分枝の切れ目は両項で打ち消し合う
    value = -(mp.e1(-w) + mp.log(-w) + mp.euler)
    return mp.re(value) if mp.im(w) == 0 else value


def pole_integral(terms: tuple[tuple[Any, Any], ...], s: Any) -> Any:
    """N(s) = 0 のときの ∫_0^1 N(u)/(u - s) du（N(u) = sum c e^{ru}）

    (e^{ru} - e^{rs})/(u - s) を項ごとに積分して
    c e^{rs} (F(r(1-s)) - F(-rs)) を足し合わせる。
    """
    return mp.fsum(c * mp.exp(r * s) * (expm1_integral(r * (1 - s)) - expm1_integral(-r * s)) for c, r in terms)
