"""各層で共有する例外クラスを提供するモジュール

CLIは例外の種類から終了コードを決める。
ValidationError系は2、NumericalError系は3。
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from quadrature import QuadratureResult


class ValidationError(ValueError):
    """パラメータが公式の前提を満たさない"""


class CotPoleError(ValidationError):
    """Lagrange恒等式のcotが極に当たる（an/Kが整数）"""


class BernoulliTableTooShortError(ValueError):
    """カーネルの次数に対してBernoulli数表が短い"""


class NumericalError(Exception):
    """数値計算の失敗の基底クラス"""


class NearPoleError(NumericalError):
    """cot/cothの極が積分区間に近すぎる"""


class NonRemovableSingularityError(NumericalError):
    """区間上の極で分子が0にならない"""


class ToleranceNotMetError(NumericalError):
    """パネル数の上限内で許容誤差に届かなかった

    Args:
        message (str): エラーメッセージ
        best (QuadratureResult): その時点での最良の推定値
    """

    def __init__(self, message: str, best: QuadratureResult) -> None:
        super().__init__(message)
        self.best = best


class InternalConsistencyError(NumericalError):
    """実数になるはずの結果に虚部が残った"""
