"""``verify S.t3 X.t3 [--k K] [--csv out.csv]``"""

import argparse
from pathlib import Path

import pandas as pd

from app.cli.common import emit, pick, repository
from app.cli.schemas import GlobalOptions, VerifyRequest, VerifyResponse
from app.core.exceptions import EXIT_OK
from app.verification.metrics import ResidualPath, residuals


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("verify", parents=parents, help="residuals of the inverse equations")
    parser.add_argument("s", type=Path)
    parser.add_argument("x", type=Path)
    parser.add_argument("--k", type=int, help="power for the E1k residual")
    parser.add_argument("--csv", type=Path)
    parser.add_argument("--path", default="tensor", choices=["tensor", "flattened", "both"])
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, options: GlobalOptions) -> int:
    request = VerifyRequest(**pick(args, "s", "x", "k", "csv", "path"))
    repo = repository()
    s, x = repo.read(request.s), repo.read(request.x)

    paths = list(ResidualPath) if request.path == "both" else [ResidualPath(request.path)]
    reports = [residuals(s, x, request.k, path) for path in paths]

    if request.csv is not None:
        rows = [
            {
                "path": report.path.value,
                "residual": name.upper(),
                "value": value,
                "k": report.k,
                "inputs_digest": report.inputs_digest,
            }
            for report in reports
            for name, value in report.values().items()
        ]
        pd.DataFrame(rows).to_csv(request.csv, index=False, float_format="%.6e")

    emit(
        VerifyResponse(
            s_digest=s.digest(), x_digest=x.digest(), reports=[r.to_dict() for r in reports]
        )
    )
    return EXIT_OK
