"""eval, verify, benchの各サブコマンドを提供するモジュール

終了コード: 0 成功, 1 検証の失敗あり, 2 入力・パラメータの誤り, 3 数値計算の失敗
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from itertools import repeat
from logging import getLogger
from typing import IO, Any, Iterator

from mpmath import mp, mpc

from closed_forms import to_mp
from errors import NumericalError, ValidationError
from oracle import ORACLE_DPS
from quadrature import QuadratureResult
from settings import Settings

from .grids import GRIDS, load_grid_file
from .instances import Instance, evaluate, format_scalar, parse_scalar, reference, term_scale
from .report import SweepRecord, SweepReport, write_csv, write_json

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

# これを超えるnでは直接和を計らない
DIRECT_SUM_LIMIT = 10**6
BENCH_COLUMNS = ("n", "closed_form_seconds", "direct_seconds", "closed_form_value", "direct_value", "status")

_INT_PARAMS = ("a", "b", "k", "n", "big_k")


def instance_from_args(args: argparse.Namespace) -> Instance:
    """コマンドライン引数から計算1件を作る"""
    params: dict[str, Any] = {}
    for name in _INT_PARAMS:
        value = getattr(args, name, None)
        if value is not None:
            params[name] = parse_scalar(value)
    if getattr(args, "m", None) is not None:
        params["m"] = parse_scalar(args.m)
    elif getattr(args, "m_re", None) is not None or getattr(args, "m_im", None) is not None:
        re = parse_scalar(args.m_re) if args.m_re is not None else 0
        if args.m_im is None:
            params["m"] = re
        else:
            with mp.workdps(ORACLE_DPS):
                params["m"] = mpc(to_mp(re), to_mp(parse_scalar(args.m_im)))
    return Instance(args.quantity, params, args.method, args.kind)


def _config_with_tol(config: Settings, args: argparse.Namespace) -> Settings:
    if getattr(args, "tol", None) is None:
        return config
    return config.replace(tol=args.tol)


def _trace_summary(trace: list[QuadratureResult]) -> tuple[float, int]:
    return sum(r.abs_error_estimate for r in trace), sum(r.panels for r in trace)


def cmd_eval(args: argparse.Namespace, config: Settings, out: IO[str] | None = None) -> int:
    """閉形式で1件計算して値と積分の診断情報を表示する

    Args:
        args (argparse.Namespace): 引数
        config (Settings): 設定
        out (IO[str] | None, optional): 出力先。省略時は標準出力

    Returns:
        int: 終了コード
    """
    out = out or sys.stdout
    trace: list[QuadratureResult] = []
    try:
        instance = instance_from_args(args)
        value = evaluate(instance, _config_with_tol(config, args), trace)
    except (ValidationError, ValueError) as e:
        logger.error("パラメータが正しくありません: %s", e)
        return EXIT_USAGE
    except (NumericalError, ArithmeticError) as e:
        logger.error("数値計算に失敗しました: %s", e)
        return EXIT_NUMERICAL
    value = mp.mpmathify(value)
    error_estimate, panels = _trace_summary(trace)
    out.write(f"value: {mp.nstr(mp.re(value), 17)}\n")
    if isinstance(value, mpc):
        out.write(f"imag: {mp.nstr(mp.im(value), 17)}\n")
    out.write(f"abs_error_estimate: {error_estimate:.3e}\n")
    out.write(f"panels: {panels}\n")
    return EXIT_OK


def run_instance(instance: Instance, config: Settings, bound: float) -> SweepRecord:
    """1件を閉形式と直接和で計算して比べる

    並列実行のためトップレベルの関数にしている。
    """
    record = SweepRecord(instance.key, instance.quantity, instance.to_dict())
    trace: list[QuadratureResult] = []
    start = time.perf_counter()
    try:
        value = evaluate(instance, config, trace)
    except (ValidationError, NumericalError, ArithmeticError, ValueError) as e:
        record.seconds = time.perf_counter() - start
        record.status = f"error:{type(e).__name__}"
        record.message = str(e)
        logger.warning("%s: %s", instance.key, e)
        return record
    record.seconds = time.perf_counter() - start
    expected = reference(instance)
    with mp.workdps(ORACLE_DPS):
        diff = abs(mp.mpmathify(value) - expected)
        scale = max(abs(expected), term_scale(instance))
        record.closed_form = format_scalar(value)
        record.oracle = format_scalar(expected)
        record.abs_error = float(diff)
        record.rel_error = float(diff / scale)
    record.abs_error_estimate, record.panels = _trace_summary(trace)
    if not record.rel_error <= bound:
        record.status = "fail"
        logger.warning("%s: 相対誤差 %.3e が上限 %.1e を超えました", instance.key, record.rel_error, bound)
    else:
        logger.debug("%s: 相対誤差 %.3e", instance.key, record.rel_error)
    return record


def run_sweep(instances: list[Instance], config: Settings, bound: float, jobs: int = 1) -> SweepReport:
    """すべての計算を比べてレポートにまとめる（並列でもキー順）"""
    logger.info("%d 件の検証を始めます (jobs=%d)", len(instances), jobs)
    if jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            records = list(executor.map(run_instance, instances, repeat(config), repeat(bound)))
    else:
        records = [run_instance(instance, config, bound) for instance in instances]
    report = SweepReport(records, bound)
    logger.info(
        "検証が終わりました: %d 件中 %d 件失敗 (最大相対誤差 %.3e)",
        report.summary["count"],
        report.summary["failures"],
        report.summary["max_rel_error"],
    )
    return report


@contextmanager
def _output(path: str | None) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        yield f


def cmd_verify(args: argparse.Namespace, config: Settings) -> int:
    """グリッドを閉形式と直接和で比べ、レポートを書き出す

    Args:
        args (argparse.Namespace): 引数
        config (Settings): 設定

    Returns:
        int: 失敗が0件なら0、あれば1
    """
    try:
        instances = load_grid_file(args.grid_file) if args.grid_file else GRIDS[args.grid]()
    except (ValidationError, ValueError, OSError) as e:
        logger.error("グリッドを読めません: %s", e)
        return EXIT_USAGE
    bound = args.bound if args.bound is not None else config.verify_bound
    report = run_sweep(instances, config, bound, args.jobs)
    with _output(args.output) as stream:
        if args.format == "csv":
            write_csv(report, stream)
        else:
            write_json(report, stream)
    return EXIT_FAILURES if report.summary["failures"] else EXIT_OK


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(float(s)) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ValidationError(f"n-listは整数のカンマ区切りである必要があります: {text}") from None
    if not values or any(n < 1 for n in values):
        raise ValidationError(f"n-listには1以上の整数が必要です: {text}")
    return values


def cmd_bench(args: argparse.Namespace, config: Settings) -> int:
    """nを変えながら閉形式と直接和の計算時間を測り、CSVで書き出す

    閉形式の時間はnにほぼ依らないはずで、直接和はnに比例する。
    直接和はn <= DIRECT_SUM_LIMIT のときだけ測る。

    Args:
        args (argparse.Namespace): 引数
        config (Settings): 設定

    Returns:
        int: 終了コード
    """
    try:
        n_list = _parse_n_list(args.n_list)
        args.n = args.n or str(n_list[0])
        base = instance_from_args(args)
    except (ValidationError, ValueError) as e:
        logger.error("パラメータが正しくありません: %s", e)
        return EXIT_USAGE
    config = _config_with_tol(config, args)
    exit_code = EXIT_OK
    with _output(args.output) as stream:
        writer = csv.DictWriter(stream, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for n in n_list:
            row = _bench_row(base.with_n(n), config)
            if row["status"] != "ok":
                exit_code = EXIT_NUMERICAL
            writer.writerow(row)
            logger.info("n = %d: 閉形式 %s 秒, 直接和 %s 秒", n, row["closed_form_seconds"], row["direct_seconds"])
    return exit_code


def _bench_row(instance: Instance, config: Settings) -> dict[str, Any]:
    n = instance.params["n"]
    row: dict[str, Any] = {"n": n, "direct_seconds": "", "direct_value": "", "status": "ok"}
    start = time.perf_counter()
    try:
        value = evaluate(instance, config)
        row["closed_form_value"] = format_scalar(value)
    except (ValidationError, NumericalError, ArithmeticError, ValueError) as e:
        row["closed_form_value"] = ""
        row["status"] = f"error:{type(e).__name__}"
        logger.warning("n = %d: %s", n, e)
    row["closed_form_seconds"] = f"{time.perf_counter() - start:.6f}"
    if n <= DIRECT_SUM_LIMIT:
        start = time.perf_counter()
        row["direct_value"] = format_scalar(reference(instance))
        row["direct_seconds"] = f"{time.perf_counter() - start:.6f}"
    return row
