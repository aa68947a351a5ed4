"""``tprod A.t3 B.t3 -o C.t3``"""

import argparse
from pathlib import Path

from app.cli.common import emit, repository, tensor_fields
from app.cli.schemas import GlobalOptions, TensorResponse, TprodRequest
from app.core.exceptions import EXIT_OK
from app.tensors.algebra import tprod


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("tprod", parents=parents, help="t-product C = A * B")
    parser.add_argument("a", type=Path)
    parser.add_argument("b", type=Path)
    parser.add_argument("-o", "--output", type=Path, required=True)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, options: GlobalOptions) -> int:
    request = TprodRequest(a=args.a, b=args.b, output=args.output)
    repo = repository()
    c = tprod(repo.read(request.a), repo.read(request.b), threads=options.threads)
    path = repo.write(c, request.output)
    emit(TensorResponse(**tensor_fields(c, path)))
    return EXIT_OK
