"""設定ファイルのREAD/WRITEを提供するモジュール

数値計算の許容誤差やパネル数上限などのつまみを一か所にまとめる。
TOMLとJSONの両方を読み込める。
"""

import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

import toml

# 設定ファイルのパス
SETTINGS_PATH = "settings.toml"


@dataclass(frozen=True, kw_only=True)
class Settings:
    """数値計算の設定値を保持するデータクラス

    Args:
        tol (float): 閉形式の許容誤差。最大項の大きさに対する相対値
        eps_switch (float): 特異点近傍で極限式に切り替える距離
        delta_pole (float): 積分区間に近すぎる極を拒否する距離
        panel_budget (int): 適応積分のパネル数上限
        dps (int): 作業精度（10進桁数）
        eps_m (float): Lerch和でHPへ縮退させる|m|のしきい値
        max_shift_denominator (int): Lerch和のシフトbを有理数として扱う分母の上限
        imag_residual_bound (float): 指数型公式の虚部残差の上限
        verify_bound (float): 検証スイープの相対誤差上限
    """

    tol: float = 1e-12
    eps_switch: float = 1e-6
    delta_pole: float = 1e-3
    panel_budget: int = 4096
    dps: int = 40
    eps_m: float = 1e-8
    max_shift_denominator: int = 64
    imag_residual_bound: float = 1e-10
    verify_bound: float = 1e-9

    def __post_init__(self) -> None:
        """設定値の範囲をチェックする"""
        if not self.tol > 0:
            raise ValueError(f"tolは正の値である必要があります: {self.tol}")
        if not self.eps_switch > 0:
            raise ValueError(f"eps_switchは正の値である必要があります: {self.eps_switch}")
        if not 0 < self.delta_pole < 1:
            raise ValueError(f"delta_poleは(0, 1)の範囲である必要があります: {self.delta_pole}")
        if self.panel_budget < 1:
            raise ValueError(f"panel_budgetは1以上である必要があります: {self.panel_budget}")
        if self.dps < 30:
            raise ValueError(f"dpsは30以上である必要があります: {self.dps}")
        if self.eps_m < 0:
            raise ValueError(f"eps_mは0以上である必要があります: {self.eps_m}")
        if self.max_shift_denominator < 1:
            raise ValueError(f"max_shift_denominatorは1以上である必要があります: {self.max_shift_denominator}")

    def replace(self, **changes: Any) -> "Settings":
        """一部の値を差し替えた設定を返す

        Returns:
            Settings: 新しい設定
        """
        return Settings(**(asdict(self) | changes))


DEFAULT_SETTINGS = Settings()


def _read_settings_dict(path: Path) -> dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        if path.suffix.lower() == ".json":
            data = json.load(f)
        else:
            data = toml.load(f)
    if not isinstance(data, dict):
        raise ValueError("設定ファイルの形式が正しくありません")
    return data


def load_settings(path: str | os.PathLike[str] | None = None) -> Settings:
    """設定ファイルを読み込む関数

    パスを省略した場合は、カレントディレクトリのsettings.tomlがあればそれを読み、
    なければデフォルト設定を返す。

    Args:
        path (str | os.PathLike[str] | None, optional): 設定ファイルのパス（.tomlまたは.json）

    Returns:
        Settings: 読み込んだ設定
    """
    if path is None:
        if not os.path.exists(SETTINGS_PATH):
            return DEFAULT_SETTINGS
        path = SETTINGS_PATH
    settings_path = Path(path)
    if not settings_path.exists():
        raise FileNotFoundError(f"設定ファイルが見つかりません: {settings_path}")
    dict_settings = _read_settings_dict(settings_path)
    known = {f.name for f in fields(Settings)}
    unknown = set(dict_settings) - known
    if unknown:
        raise ValueError(f"設定ファイルの形式が正しくありません（未知のキー: {sorted(unknown)}）")
    try:
        return Settings(**dict_settings)
    except TypeError as e:
        raise ValueError("設定ファイルの形式が正しくありません") from e


def save_settings(new_setting: Settings, path: str | os.PathLike[str] = SETTINGS_PATH) -> None:
    """設定ファイルに書き込む関数"""
    with open(path, "w", encoding="utf-8") as f:
        toml.dump(asdict(new_setting), f)
