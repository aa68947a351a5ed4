"""``gen --family kahan --theta 1.2 --size 8x8x4 --seed 3 -o T.t3``"""

import argparse
from pathlib import Path

from app.cli.common import GALLERY_FIELDS, add_gallery_arguments, emit, pick, repository, tensor_fields
from app.cli.schemas import GenRequest, GenResponse, GlobalOptions
from app.core.exceptions import EXIT_OK
from app.gallery.generators import generate


def register(subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("gen", parents=parents, help="write a gallery test tensor")
    add_gallery_arguments(parser)
    parser.add_argument("-o", "--output", type=Path, required=True)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, options: GlobalOptions) -> int:
    request = GenRequest(**pick(args, *GALLERY_FIELDS, "output"))
    spec = request.to_spec()
    tensor = generate(spec)
    path = repository().write(tensor, request.output)
    emit(
        GenResponse(
            **tensor_fields(tensor, path),
            family=spec.family.value,
            slice_rule=spec.slice_rule.value,
            seed=spec.seed,
            parameters=spec.parameters(),
        )
    )
    return EXIT_OK
