"""検証スイープで回す計算の一覧（グリッド）を提供するモジュール"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import product
from logging import getLogger
from pathlib import Path
from typing import Callable

from mpmath import mp, mpc, mpf

from closed_forms import ProgressionParams
from errors import ValidationError

from .instances import Instance

logger = getLogger(__name__)

HP_A = (1, 2, 3, 5)
HP_B = (0, 1, 2, 7, -1)
HP_K = range(1, 9)
HP_N = (1, 2, 5, 10, 50)
HP_GRID_METHODS = ("exp", "sine", "sine-product", "recursive")

FOURIER_A = (1, 2)
FOURIER_B = (0, 1)
FOURIER_K = range(1, 7)
FOURIER_N = (1, 5, 25)

LERCH_K = range(1, 7)
LERCH_N = (1, 5, 25)
LERCH_B = (0, Fraction(1, 2), 1, 2)

LAGRANGE_COUNT = 200
LAGRANGE_SEED = 20240101


def _fourier_m() -> tuple:
    # 複素数のmは cot(πau/m) の極 u = jm/a が区間から十分離れるものを選ぶ
    with mp.workdps(50):
        return (1, 2, 3, Fraction(7, 2), +mp.e, complex(3, 0.5))


def _lerch_m() -> tuple:
    with mp.workdps(50):
        return (-1, Fraction(-1, 2), mpc(0, mp.pi / 4), complex(0.5, 1 / 3))


def _log_half() -> mpf:
    with mp.workdps(50):
        return mp.log(mpf(1) / 2)


def _valid(a: int, b: int, n: int) -> bool:
    try:
        ProgressionParams(a, b, 1, n)
    except ValidationError:
        return False
    return True


def hp_grid() -> list[Instance]:
    """HP_kの全パラメータと4通りの閉形式"""
    return [
        Instance("hp", {"a": a, "b": b, "k": k, "n": n}, method)
        for a, b, k, n, method in product(HP_A, HP_B, HP_K, HP_N, HP_GRID_METHODS)
        if _valid(a, b, n)
    ]


def fourier_grid() -> list[Instance]:
    """部分Fourier和。cos, sinそれぞれkの偶奇に合った公式を使う"""
    return [
        Instance("fourier", {"a": a, "b": b, "k": k, "n": n, "m": m}, kind=kind)
        for m, a, b, k, n, kind in product(_fourier_m(), FOURIER_A, FOURIER_B, FOURIER_K, FOURIER_N, ("cos", "sin"))
    ]


def lerch_grid() -> list[Instance]:
    """Lerch型の部分和（b = 0 は多重対数）"""
    instances = []
    for m, b, k, n in product(_lerch_m(), LERCH_B, LERCH_K, LERCH_N):
        if b == 0:
            instances.append(Instance("polylog", {"k": k, "m": m, "n": n}))
        else:
            instances.append(Instance("lerch", {"b": b, "k": k, "m": m, "n": n}))
    return instances


def lagrange_grid(count: int = LAGRANGE_COUNT, seed: int = LAGRANGE_SEED) -> list[Instance]:
    """a, b, n ∈ [-3, 3], K ∈ 1..10 の乱数で作るLagrange恒等式の計算

    an/Kが整数になる（cotの極に当たる）組は除く。
    """
    rng = random.Random(seed)
    instances: list[Instance] = []
    while len(instances) < count:
        a, b, n = (Fraction(rng.randint(-3000, 3000), 1000) for _ in range(3))
        big_k = rng.randint(1, 10)
        if (a * n / big_k).denominator == 1:
            continue
        kind = rng.choice(("sin", "cos"))
        instances.append(Instance("lagrange", {"a": a, "b": b, "n": n, "big_k": big_k}, kind=kind))
    return instances


def smoke_grid() -> list[Instance]:
    """すぐ終わる代表例"""
    return [
        Instance("hp", {"a": 2, "b": 1, "k": 1, "n": 2}, "exp"),
        Instance("hp", {"a": 1, "b": 0, "k": 2, "n": 3}, "sine"),
        Instance("hp", {"a": 2, "b": 1, "k": 3, "n": 2}, "sine-product"),
        Instance("hp", {"a": 1, "b": 1, "k": 4, "n": 5}, "recursive"),
        Instance("hp", {"a": 3, "b": -1, "k": 1, "n": 3}, "order1"),
        Instance("fourier", {"a": 2, "b": 1, "k": 1, "n": 4, "m": 3}, kind="cos"),
        Instance("fourier", {"a": 1, "b": 0, "k": 3, "n": 5, "m": 2}, kind="sin"),
        Instance("lerch", {"b": Fraction(1, 2), "k": 2, "m": _lerch_m()[2], "n": 6}),
        Instance("polylog", {"k": 1, "m": _log_half(), "n": 4}),
        Instance(
            "lagrange",
            {"a": Fraction(7, 10), "b": Fraction(3, 10), "n": Fraction(19, 10), "big_k": 6},
            kind="sin",
        ),
    ]


def default_grid() -> list[Instance]:
    """受け入れ基準のグリッド全体"""
    return hp_grid() + fourier_grid() + lerch_grid() + lagrange_grid()


GRIDS: dict[str, Callable[[], list[Instance]]] = {
    "smoke": smoke_grid,
    "hp": hp_grid,
    "fourier": fourier_grid,
    "lerch": lerch_grid,
    "lagrange": lagrange_grid,
    "default": default_grid,
}


def load_grid_file(path: str | Path) -> list[Instance]:
    """JSONのリストから計算の一覧を読む

    Args:
        path (str | Path): ファイルパス

    Returns:
        list[Instance]: 計算の一覧（空のリストも可）
    """
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"グリッドファイルを読めません: {path}: {e}") from e
    if not isinstance(data, list):
        raise ValidationError(f"グリッドファイルはJSONのリストである必要があります: {path}")
    instances = [Instance.from_dict(item) for item in data]
    logger.info("グリッドファイル %s から %d 件を読み込みました", path, len(instances))
    return instances
