"""[0, 1]上の適応積分を行うモジュール

被積分関数 K(u) N(u) cot(cu) を、区間上の極の部分と滑らかな残り h(u) に分ける。
極の部分は指数積分で解析的に求め、残りの ∫ N(u) h(u) du をパネルごとに積分する。
N(u) = sum c_i e^{r_i u} のうち、パネル上でゆっくり変わる項はGauss-Legendre則で、
速く振動する項はhのLegendre展開と e^{r_i u} のモーメントで積分する（Filon型）。
どちらも24点と48点の結果を比べて誤差を見積もり、誤差の最も大きいパネルを二分していく。
振動の速さはパネルの数に効かないので、手間はNに依らない。
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from logging import getLogger
from typing import Any

from mpmath import mp, mpf
from mpmath.calculus.quadrature import GaussLegendre

from errors import NonRemovableSingularityError, ToleranceNotMetError
from settings import DEFAULT_SETTINGS, Settings

from .integrand import IntegrandSpec, SmoothRemainder, singular_points
from .moments import legendre_moments, legendre_table

logger = getLogger(__name__)

# GaussLegendre.calc_nodesの次数（3 * 2^(degree-1) 点）
COARSE_DEGREE = 4
FINE_DEGREE = 5
# |r * パネル幅/2| がこれを超える項はモーメントで積分する
FILON_SWITCH = 4
# 特異点での分子の値が、項の大きさに対してこれ以下なら除去可能とみなす
REMOVABLE_RTOL = mpf("1e-20")

_node_cache: dict[tuple[int, int], tuple[tuple[mpf, mpf], ...]] = {}


@dataclass(frozen=True)
class QuadratureResult:
    """積分結果

    Args:
        value (Any): prefactorを掛けた積分値（複素数になりうる）
        abs_error_estimate (float): 絶対誤差の見積もり
        panels (int): 使ったパネル数
        singular_points (tuple[float, ...]): 区間上の特異点
        label (str): ログ用の名前
    """

    value: Any
    abs_error_estimate: float
    panels: int
    singular_points: tuple[float, ...] = ()
    label: str = field(default="", compare=False)


def _nodes(degree: int) -> tuple[tuple[mpf, mpf], ...]:
    key = (degree, mp.prec)
    if key not in _node_cache:
        _node_cache[key] = tuple(tuple(node) for node in GaussLegendre(mp).calc_nodes(degree, mp.prec))
    return _node_cache[key]


class _PanelRule:
    """∫_lo^hi N(u) h(u) du を24点と48点で求める

    Args:
        terms (tuple[tuple[Any, Any], ...]): 分子の (c_i, r_i)
        remainder (SmoothRemainder): 極を引いた残り h
    """

    def __init__(self, terms: tuple[tuple[Any, Any], ...], remainder: SmoothRemainder) -> None:
        self.terms = terms
        self.remainder = remainder

    def _estimate(self, degree: int, mid: mpf, half: mpf, slow: list, fast: list) -> Any:
        nodes = _nodes(degree)
        points = [mid + half * x for x, _ in nodes]
        values = [self.remainder(u) for u in points]
        parts = []
        if slow:
            waves = [mp.fsum(c * mp.exp(r * u) for c, r in slow) for u in points]
            parts.append(mp.fsum(w * v * wave for (_, w), v, wave in zip(nodes, values, waves, strict=True)))
        if fast:
            table = legendre_table(nodes)
            coeffs = [mp.fsum(weight * v for weight, v in zip(row, values, strict=True)) for row in table]
            for c, r, moments in fast:
                parts.append(c * mp.exp(r * mid) * mp.fsum(a * m for a, m in zip(coeffs, moments, strict=False)))
        return half * mp.fsum(parts)

    def __call__(self, lo: mpf, hi: mpf) -> tuple[Any, mpf]:
        """パネルの値と誤差の見積もり"""
        half = (hi - lo) / 2
        mid = (hi + lo) / 2
        slow = [(c, r) for c, r in self.terms if abs(r * half) <= FILON_SWITCH]
        count = len(_nodes(FINE_DEGREE))
        fast = [(c, r, legendre_moments(r * half, count)) for c, r in self.terms if abs(r * half) > FILON_SWITCH]
        coarse = self._estimate(COARSE_DEGREE, mid, half, slow, fast)
        fine = self._estimate(FINE_DEGREE, mid, half, slow, fast)
        return fine, abs(fine - coarse)


def _check_removable(spec: IntegrandSpec, points: list[mpf]) -> None:
    for s in points:
        value = spec.numerator(s)
        scale = spec.numerator.magnitude(s)
        if abs(value) > REMOVABLE_RTOL * max(scale, mpf(1)):
            raise NonRemovableSingularityError(
                f"{spec.label}: u = {mp.nstr(s, 10)} で分子が0になりません (|N| = {mp.nstr(abs(value), 5)})"
            )


def integrate(spec: IntegrandSpec, tol: float, config: Settings | None = None) -> QuadratureResult:
    """prefactor * ∫_0^1 kernel(u) numerator(u) cot(scale u) du を計算する

    Args:
        spec (IntegrandSpec): 被積分関数
        tol (float): prefactorを掛けた後の値に対する絶対許容誤差
        config (Settings | None, optional): 設定。省略時はデフォルト

    Returns:
        QuadratureResult: 積分値と誤差の見積もり
    """
    if not tol > 0:
        raise ValueError(f"tolは正の値である必要があります: {tol}")
    config = config or DEFAULT_SETTINGS
    with mp.workdps(config.dps):
        return _integrate(spec, tol, config)


def _integrate(spec: IntegrandSpec, tol: float, config: Settings) -> QuadratureResult:
    prefactor = mp.mpmathify(spec.prefactor)
    points = singular_points(spec, config.delta_pole)
    point_floats = tuple(float(s) for s in points)
    if spec.numerator.is_zero or prefactor == 0:
        return QuadratureResult(mpf(0), 0.0, 0, point_floats, spec.label)
    _check_removable(spec, points)

    remainder = SmoothRemainder(spec, points, config.eps_switch)
    rule = _PanelRule(spec.numerator.combined().terms, remainder)
    poles = remainder.pole_part()
    # prefactorで割った許容誤差で内部の積分を打ち切る
    inner_tol = mpf(tol) / abs(prefactor)
    breaks = sorted(set([mpf(0), mpf(1)] + points))
    panels: dict[int, tuple[mpf, mpf, Any, mpf]] = {}
    heap: list[tuple[float, int]] = []
    for idx, (lo, hi) in enumerate(zip(breaks, breaks[1:], strict=False)):
        value, err = rule(lo, hi)
        panels[idx] = (lo, hi, value, err)
        heapq.heappush(heap, (-float(err), idx))
    next_idx = len(panels)
    total_err = mp.fsum(p[3] for p in panels.values())

    while total_err > inner_tol:
        if len(panels) + 1 > config.panel_budget:
            best = _collect(panels, poles, prefactor, points, spec.label)
            logger.warning(
                "%s: パネル数の上限 %d に達しました (誤差 %.3g)",
                spec.label,
                config.panel_budget,
                best.abs_error_estimate,
            )
            raise ToleranceNotMetError(
                f"{spec.label}: 許容誤差 {tol:.3g} に届きませんでした (見積もり {best.abs_error_estimate:.3g})",
                best,
            )
        _, idx = heapq.heappop(heap)
        lo, hi, _, err = panels.pop(idx)
        total_err -= err
        mid = (lo + hi) / 2
        for a, b in ((lo, mid), (mid, hi)):
            value, child_err = rule(a, b)
            panels[next_idx] = (a, b, value, child_err)
            heapq.heappush(heap, (-float(child_err), next_idx))
            total_err += child_err
            next_idx += 1

    result = _collect(panels, poles, prefactor, points, spec.label)
    logger.debug("%s: %d パネルで収束 (誤差 %.3g)", spec.label, result.panels, result.abs_error_estimate)
    return result


def _collect(
    panels: dict[int, tuple[mpf, mpf, Any, mpf]], poles: Any, prefactor: Any, points: list[mpf], label: str
) -> QuadratureResult:
    # 左端の順に足して、分割順序に依らず同じ値にする
    ordered = sorted(panels.values(), key=lambda p: p[0])
    value = prefactor * (poles + mp.fsum(p[2] for p in ordered))
    err = abs(prefactor) * mp.fsum(p[3] for p in ordered)
    return QuadratureResult(value, float(err), len(ordered), tuple(float(s) for s in points), label)
