"""CLIで扱う1件分の計算（量の種類とパラメータ）を提供するモジュール"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from mpmath import mp, mpc, mpf

import oracle
from closed_forms import (
    FourierParams,
    IntegrandForm,
    LerchParams,
    ProgressionParams,
    TrigKind,
    fourier_c,
    fourier_s,
    hp_even,
    hp_exp,
    hp_odd,
    hp_order1,
    hp_recursive,
    lagrange_closed_form,
    lerch_partial,
    polylog_partial,
)
from errors import ValidationError
from quadrature import QuadratureResult
from settings import Settings

QUANTITIES = ("hp", "fourier", "lerch", "polylog", "lagrange")
HP_METHODS = ("exp", "sine", "sine-product", "recursive", "order1")
KINDS = ("cos", "sin")

# 各量で必須のパラメータ
REQUIRED_PARAMS = {
    "hp": ("a", "b", "k", "n"),
    "fourier": ("a", "b", "k", "n", "m"),
    "lerch": ("b", "k", "m", "n"),
    "polylog": ("k", "m", "n"),
    "lagrange": ("a", "b", "n", "big_k"),
}

_CONSTANTS = {"e": mp.e, "pi": mp.pi}
# 定数を読むときの精度
CONSTANT_DPS = 50
_FRACTION = re.compile(r"^[+-]?\d+/\d+$")
_INTEGER = re.compile(r"^[+-]?\d+$")
_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def parse_scalar(text: str) -> Any:
    """文字列のスカラーを読む

    整数、分数（7/2）、小数（有理数として読む）、複素数（0.5+0.333j）、定数e, piに対応する。

    Args:
        text (str): 文字列

    Returns:
        Any: int, Fraction, complex, または mpmathの定数
    """
    s = str(text).strip().replace(" ", "")
    if _INTEGER.match(s):
        return int(s)
    if _FRACTION.match(s) or _DECIMAL.match(s):
        return Fraction(s)
    sign, body = (-1, s[1:]) if s.startswith("-") else (1, s.lstrip("+"))
    if body in _CONSTANTS:
        with mp.workdps(CONSTANT_DPS):
            return sign * +_CONSTANTS[body]
    try:
        return complex(s)
    except ValueError:
        raise ValidationError(f"数値として読めません: {text!r}") from None


def format_scalar(value: Any) -> str:
    """17桁の文字列にする（複素数は a+bj 形式）"""
    if isinstance(value, (int, Fraction)):
        return str(value)
    value = mp.mpmathify(value)
    if isinstance(value, mpc):
        return f"{mp.nstr(value.real, 17)}{'+' if value.imag >= 0 else '-'}{mp.nstr(abs(value.imag), 17)}j"
    return mp.nstr(value, 17)


@dataclass(frozen=True)
class Instance:
    """計算1件

    Args:
        quantity (str): hp, fourier, lerch, polylog, lagrangeのいずれか
        params (dict[str, Any]): a, b, k, n, m, big_kなど
        method (str): hpの閉形式の選び方
        kind (str): fourierとlagrangeのcos/sin
    """

    quantity: str
    params: dict[str, Any] = field(default_factory=dict)
    method: str = "exp"
    kind: str = "cos"

    def __post_init__(self) -> None:
        """量の種類と必須パラメータをチェックする"""
        if self.quantity not in QUANTITIES:
            raise ValidationError(f"未知の量です: {self.quantity}")
        if self.method not in HP_METHODS:
            raise ValidationError(f"未知の計算方法です: {self.method}")
        if self.kind not in KINDS:
            raise ValidationError(f"kindはcosかsinである必要があります: {self.kind}")
        missing = [name for name in REQUIRED_PARAMS[self.quantity] if name not in self.params]
        if missing:
            raise ValidationError(f"{self.quantity}にはパラメータ {', '.join(missing)} が必要です")

    @property
    def key(self) -> str:
        """並べ替えと照合に使う一意な名前"""
        params = ",".join(f"{name}={format_scalar(self.params[name])}" for name in sorted(self.params))
        if self.quantity == "hp":
            return f"hp[{self.method}]({params})"
        if self.quantity in ("fourier", "lagrange"):
            return f"{self.quantity}[{self.kind}]({params})"
        return f"{self.quantity}({params})"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Instance:
        """JSONの辞書から作る。パラメータは文字列でも数値でもよい"""
        data = dict(data)
        try:
            quantity = data.pop("quantity")
        except KeyError:
            raise ValidationError(f"quantityがありません: {data}") from None
        method = data.pop("method", "exp")
        kind = data.pop("kind", "cos")
        params = {name: parse_scalar(value) if isinstance(value, str) else value for name, value in data.items()}
        return cls(quantity, params, method, kind)

    def to_dict(self) -> dict[str, str]:
        """JSONに書き出す辞書（パラメータは文字列）"""
        data = {"quantity": self.quantity}
        if self.quantity == "hp":
            data["method"] = self.method
        if self.quantity in ("fourier", "lagrange"):
            data["kind"] = self.kind
        data.update({name: format_scalar(value) for name, value in self.params.items()})
        return data

    def progression(self) -> ProgressionParams:
        """a, b, k, nからProgressionParamsを作る"""
        p = self.params
        return ProgressionParams(p["a"], p["b"], p["k"], p["n"])

    def fourier(self) -> FourierParams:
        """FourierParamsを作る"""
        return FourierParams(self.progression(), self.params["m"])

    def lerch(self) -> LerchParams:
        """LerchParamsを作る（polylogはb = 0）"""
        p = self.params
        return LerchParams(p.get("b", 0), p["k"], p["m"], p["n"])

    def with_n(self, n: int) -> Instance:
        """項数だけ変えた計算"""
        return Instance(self.quantity, {**self.params, "n": n}, self.method, self.kind)


def evaluate(instance: Instance, config: Settings, trace: list[QuadratureResult] | None = None) -> Any:
    """閉形式で計算する"""
    q = instance.quantity
    if q == "hp":
        p = instance.progression()
        if instance.method == "exp":
            return hp_exp(p, config, trace)
        if instance.method == "recursive":
            return hp_recursive(p, config, trace)
        if instance.method == "order1":
            return hp_order1(p, config, trace)
        form = IntegrandForm.PRODUCT if instance.method == "sine-product" else IntegrandForm.SUM
        sine = hp_odd if p.k % 2 == 1 else hp_even
        return sine(p, form, config, trace)
    if q == "fourier":
        f = instance.fourier()
        return (fourier_c if instance.kind == "cos" else fourier_s)(f, config, trace)
    if q == "lerch":
        return lerch_partial(instance.lerch(), config, trace)
    if q == "polylog":
        p = instance.params
        return polylog_partial(p["k"], p["m"], p["n"], config, trace)
    p = instance.params
    return lagrange_closed_form(TrigKind(instance.kind), p["a"], p["b"], p["n"], p["big_k"], config)


def reference(instance: Instance) -> Any:
    """直接和で計算する"""
    q = instance.quantity
    if q == "hp":
        return oracle.sum_hp(instance.progression())
    if q == "fourier":
        return oracle.sum_fourier(instance.fourier(), instance.kind)
    if q in ("lerch", "polylog"):
        return oracle.sum_lerch(instance.lerch())
    p = instance.params
    return oracle.sum_lagrange(instance.kind, p["a"], p["b"], p["n"], p["big_k"])


def term_scale(instance: Instance) -> mpf:
    """和の最大の項の絶対値（打ち消し合う和の誤差を測る尺度）"""
    q = instance.quantity
    p = instance.params
    with mp.workdps(20):
        if q == "lagrange":
            return mpf(1)
        if q in ("lerch", "polylog"):
            params = instance.lerch()
            b, m = _to_mp(params.b), _to_mp(params.m)
            return max(abs(mp.exp(m * (j + b)) / (j + b) ** params.k) for j in _endpoints(params.n, b))
        progression = instance.progression()
        base = mpf(1) / mpf(progression.min_abs_denominator) ** progression.k
        if q == "fourier":
            x = 2 * mp.pi / _to_mp(p["m"])
            base *= max(mp.exp(abs(mp.im(x * (progression.a * j + progression.b)))) for j in (1, progression.n))
        return base


def _to_mp(x: Any) -> Any:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


def _endpoints(n: int, b: Any) -> set[int]:
    # |j + b| が最小になるjと両端
    re_b = mp.re(b)
    return {j for j in (1, n, int(mp.floor(-re_b)), int(mp.ceil(-re_b))) if 1 <= j <= n}
