"""検証スイープの結果（レコードと集計）をJSON/CSVに書き出すモジュール"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import IO, Any

CSV_COLUMNS = (
    "key",
    "quantity",
    "params",
    "closed_form",
    "oracle",
    "abs_error",
    "rel_error",
    "abs_error_estimate",
    "panels",
    "seconds",
    "status",
    "message",
)

# JSONでnan, infを文字列にしているフィールド
FLOAT_FIELDS = ("abs_error", "rel_error", "abs_error_estimate", "seconds")


@dataclass
class SweepRecord:
    """計算1件の比較結果

    Args:
        key (str): 計算の一意な名前
        quantity (str): 量の種類
        params (dict[str, str]): パラメータ（文字列）
        closed_form (str): 閉形式の値（17桁）
        oracle (str): 直接和の値（17桁）
        abs_error (float): |閉形式 - 直接和|
        rel_error (float): abs_error / max(|直接和|, 最大の項)
        abs_error_estimate (float): 積分の誤差見積もりの合計
        panels (int): 使ったパネル数の合計
        seconds (float): 閉形式の計算時間
        status (str): ok, fail, または error:<例外名>
        message (str): エラーメッセージ
    """

    key: str
    quantity: str
    params: dict[str, str] = field(default_factory=dict)
    closed_form: str = ""
    oracle: str = ""
    abs_error: float = math.nan
    rel_error: float = math.nan
    abs_error_estimate: float = 0.0
    panels: int = 0
    seconds: float = 0.0
    status: str = "ok"
    message: str = ""

    @property
    def failed(self) -> bool:
        """失敗かどうか"""
        return self.status != "ok"


@dataclass
class SweepReport:
    """検証スイープの結果

    Args:
        records (list[SweepRecord]): キー順のレコード
        bound (float): 相対誤差の上限
        summary (dict[str, Any]): recordsから作った集計
    """

    records: list[SweepRecord]
    bound: float
    summary: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """集計をレコードから作り直す"""
        self.records = sorted(self.records, key=lambda r: r.key)
        self.summary = summarize(self.records, self.bound)

    @classmethod
    def from_json(cls, text: str) -> SweepReport:
        """JSONから読み直す"""
        data = json.loads(text)
        records = [_record_from_dict(r) for r in data["records"]]
        return cls(records, data["summary"]["bound"])

    def to_dict(self) -> dict[str, Any]:
        """JSONに書き出す辞書"""
        return {"records": [asdict(r) for r in self.records], "summary": self.summary}


def _record_from_dict(data: dict[str, Any]) -> SweepRecord:
    names = {f.name for f in fields(SweepRecord)}
    kwargs = {k: v for k, v in data.items() if k in names}
    for name in FLOAT_FIELDS:
        if name in kwargs:
            kwargs[name] = float(kwargs[name])
    return SweepRecord(**kwargs)


def summarize(records: list[SweepRecord], bound: float) -> dict[str, Any]:
    """レコードから集計を作る

    Args:
        records (list[SweepRecord]): レコード
        bound (float): 相対誤差の上限

    Returns:
        dict[str, Any]: 件数、失敗数、最大相対誤差
    """
    errors = [r.rel_error for r in records if not math.isnan(r.rel_error)]
    return {
        "count": len(records),
        "failures": sum(1 for r in records if r.failed),
        "max_rel_error": max(errors) if errors else 0.0,
        "bound": bound,
    }


def _json_safe(value: Any) -> Any:
    # JSONはnan, infを持てないので文字列にする
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    return value


def write_json(report: SweepReport, stream: IO[str]) -> None:
    """JSONで書き出す"""
    json.dump(_json_safe(report.to_dict()), stream, ensure_ascii=False, indent=2)
    stream.write("\n")


def write_csv(report: SweepReport, stream: IO[str]) -> None:
    """CSVで書き出す（1行1レコード、列はCSV_COLUMNSの順）"""
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in report.records:
        row = asdict(record)
        row["params"] = ";".join(f"{k}={v}" for k, v in sorted(record.params.items()))
        writer.writerow({column: row[column] for column in CSV_COLUMNS})
