"""``inv --kind {mp|group|drazin|outer} ... A.t3 -o X.t3``"""

import argparse
from pathlib import Path

import structlog

from app.cli.common import emit, pick, repository, tensor_fields
from app.cli.schemas import GlobalOptions, InverseRequest, InverseResponse
from app.core.exceptions import EXIT_OK
from app.outer.engine import InverseEngine, InverseKind
from app.outer.results import Method
from app.outer.tqr import QrFormula

logger = structlog.get_logger(__name__)


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "inv", parents=parents, help="generalized inverse with prescribed range and/or null space"
    )
    parser.add_argument("source", type=Path, help="tensor S to invert")
    parser.add_argument("--kind", required=True, choices=[k.value for k in InverseKind])
    parser.add_argument("--range", dest="range_path", type=Path, help="tensor whose t-range X must have")
    parser.add_argument("--null", dest="null_path", type=Path, help="tensor whose t-null space X must have")
    parser.add_argument("--b", dest="b_path", type=Path, help="range tensor B of X = B(CSB)^+C")
    parser.add_argument("--c", dest="c_path", type=Path, help="null-space tensor C of X = B(CSB)^+C")
    parser.add_argument("--method", default=Method.DIRECT.value, choices=[m.value for m in Method])
    parser.add_argument("--power", type=int, help="Drazin: power k, at least the t-index")
    parser.add_argument(
        "--rank", help="rqr: target rank of every Fourier slice, or a comma-separated list, one per slice"
    )
    parser.add_argument("--oversample", type=int, help="rqr: sketch oversampling")
    parser.add_argument("--seed", type=int, help="rqr: sketch seed")
    parser.add_argument(
        "--formula", default=QrFormula.PROJECTED.value, choices=[f.value for f in QrFormula],
        help="closed form used on the QR routes",
    )
    parser.add_argument("-o", "--output", type=Path, required=True)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, options: GlobalOptions) -> int:
    request = InverseRequest(
        **pick(
            args, "source", "output", "kind", "method", "range_path", "null_path",
            "b_path", "c_path", "power", "rank", "oversample", "seed", "formula",
        )
    )
    repo = repository()

    def load(path: Path | None):
        return repo.read(path) if path is not None else None

    s = repo.read(request.source)
    engine = InverseEngine(
        tol=options.tol, threads=options.threads, oversample=request.oversample,
        seed=request.seed, formula=request.formula,
    )
    result = engine.compute(
        request.kind, s, method=request.method,
        range_tensor=load(request.range_path), null_tensor=load(request.null_path),
        b=load(request.b_path), c=load(request.c_path),
        power=request.power, rank=request.rank,
    )
    path = repo.write(result.inverse, request.output)
    logger.info("inv.written", path=str(path), prescription=str(result.prescription))

    emit(
        InverseResponse(
            **tensor_fields(result.inverse, path),
            kind=request.kind.value,
            prescription=str(result.prescription),
            method=result.method.value,
            ranks_checked=list(result.ranks_checked),
            tolerance_used=result.tolerance_used,
            extras=result.extras,
        )
    )
    return EXIT_OK
