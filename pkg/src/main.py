"""コマンドラインのエントリーポイント

使い方:
    python ./src/main.py eval hp --a 2 --b 1 --k 1 --n 2
    python ./src/main.py verify --format csv
    python ./src/main.py verify --grid smoke
    python ./src/main.py bench hp --a 1 --b 1 --k 2 --n-list 100,1000000000
"""

from __future__ import annotations

import argparse
from logging import getLogger

from cli import EXIT_USAGE, GRIDS, HP_METHODS, KINDS, QUANTITIES, cmd_bench, cmd_eval, cmd_verify
from logger_config import load_logger_settings
from settings import load_settings

logger = getLogger(__name__)


def _add_instance_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("quantity", choices=QUANTITIES, help="計算する量")
    for name in ("a", "b", "k", "n", "m", "m-re", "m-im"):
        parser.add_argument(f"--{name}", default=None)
    parser.add_argument("--big-k", default=None, help="Lagrange恒等式の項数K")
    parser.add_argument("--kind", choices=KINDS, default="cos")
    parser.add_argument("--method", choices=HP_METHODS, default="exp", help="HP_kの閉形式")
    parser.add_argument("--tol", type=float, default=None, help="設定のtolを上書きする")


def build_parser() -> argparse.ArgumentParser:
    """引数パーサーを作る"""
    parser = argparse.ArgumentParser(prog="main.py", description="等差数列の部分和を閉形式で計算・検証する")
    parser.add_argument("--config", default=None, help="設定ファイル（.tomlまたは.json）")
    parser.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    parser.add_argument("--log-file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    eval_parser = sub.add_parser("eval", help="閉形式で1件計算する")
    _add_instance_arguments(eval_parser)

    verify_parser = sub.add_parser("verify", help="グリッドを直接和と比べる")
    grid = verify_parser.add_mutually_exclusive_group()
    grid.add_argument(
        "--grid",
        choices=tuple(GRIDS),
        default="default",
        help="既定は受け入れ基準のグリッド全体。smokeはすぐ終わる代表例",
    )
    grid.add_argument("--grid-file", default=None, help="計算の一覧（JSONのリスト）")
    verify_parser.add_argument("--bound", type=float, default=None, help="相対誤差の上限")
    verify_parser.add_argument("--format", choices=("json", "csv"), default="json")
    verify_parser.add_argument("--output", default=None)
    verify_parser.add_argument("--jobs", type=int, default=1)

    bench_parser = sub.add_parser("bench", help="閉形式と直接和の計算時間を比べる")
    _add_instance_arguments(bench_parser)
    bench_parser.add_argument("--n-list", default="100,10000,1000000", help="カンマ区切りの項数")
    bench_parser.add_argument("--output", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    """CLIを実行する

    Args:
        argv (list[str] | None, optional): 引数。省略時はsys.argv

    Returns:
        int: 終了コード
    """
    args = build_parser().parse_args(argv)
    load_logger_settings(args.log_level, args.log_file)
    try:
        config = load_settings(args.config)
    except (OSError, ValueError) as e:
        logger.error("設定ファイルを読めません: %s", e)
        return EXIT_USAGE
    logger.debug("設定: %s", config)
    if args.command == "eval":
        return cmd_eval(args, config)
    if args.command == "verify":
        return cmd_verify(args, config)
    return cmd_bench(args, config)


if __name__ == "__main__":
    raise SystemExit(main())
