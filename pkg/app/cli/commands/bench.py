"""``bench --family chow --size 40x40x40 --op mp --trials 5 --seed 7 --csv out.csv``"""

import argparse
import sys
from pathlib import Path

from app.bench.harness import BenchOp, run_bench
from app.bench.reporting import records_frame, write_csv, write_json
from app.cli.common import GALLERY_FIELDS, add_gallery_arguments, pick
from app.cli.schemas import BenchRequest, GlobalOptions


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "bench", parents=parents, help="time and verify the tensor path against the matrix path"
    )
    add_gallery_arguments(parser)
    parser.add_argument("--op", required=True, choices=[op.value for op in BenchOp])
    parser.add_argument("--trials", type=int)
    parser.add_argument("--power", type=int, help="drazin: power k")
    parser.add_argument("--csv", type=Path)
    parser.add_argument("--json", dest="json_path", type=Path)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, options: GlobalOptions) -> int:
    request = BenchRequest(**pick(args, *GALLERY_FIELDS, "op", "trials", "power", "csv", "json_path"))
    record = run_bench(
        request.to_spec(), request.op, trials=request.trials, seed=request.seed,
        tol=options.tol, threads=options.threads, power=request.power,
    )
    if request.csv is not None:
        write_csv([record], request.csv)
    if request.json_path is not None:
        write_json([record], request.json_path)

    sys.stdout.write(records_frame([record]).to_string(index=False) + "\n")
    if record.failed:
        print(f"error: {record.error}", file=sys.stderr)
    return record.exit_code
