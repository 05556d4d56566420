from .commands import (
    EXIT_FAILURES,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    cmd_bench,
    cmd_eval,
    cmd_verify,
    instance_from_args,
    run_instance,
    run_sweep,
)
from .grids import GRIDS, load_grid_file
from .instances import HP_METHODS, KINDS, QUANTITIES, Instance, evaluate, format_scalar, parse_scalar, reference
from .report import SweepRecord, SweepReport, write_csv, write_json
