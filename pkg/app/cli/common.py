"""Helpers shared by the subcommands."""

import argparse
import sys
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

from app.gallery.generators import GalleryFamily, SliceRule
from app.repositories.tensor_file import TensorFileRepository
from app.tensors.tensor import Tensor3

GALLERY_FIELDS = (
    "family", "size", "seed", "alpha", "delta", "theta", "pert",
    "cycle_len", "gear_i", "gear_j", "slice_rule", "magnitude",
)


def emit(response: BaseModel) -> None:
    """Print a response model as JSON on stdout."""
    sys.stdout.write(response.model_dump_json(indent=2) + "\n")


def tensor_fields(tensor: Tensor3, path: Path) -> dict[str, Any]:
    return {
        "output": str(path),
        "shape": list(tensor.shape),
        "scalar_kind": tensor.scalar_kind.value,
        "digest": tensor.digest(),
    }


def repository() -> TensorFileRepository:
    return TensorFileRepository()


def pick(args: argparse.Namespace, *names: str) -> dict[str, Any]:
    """Namespace entries that were actually supplied."""
    values = vars(args)
    return {name: values[name] for name in names if values.get(name) is not None}


def validation_message(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        loc = ".".join(str(part) for part in error["loc"])
        parts.append(f"{loc}: {error['msg']}" if loc else error["msg"])
    return "; ".join(parts)


def add_gallery_arguments(parser: argparse.ArgumentParser) -> None:
    """Family selection, size and family parameters."""
    parser.add_argument("--family", required=True, choices=[f.value for f in GalleryFamily])
    parser.add_argument("--size", required=True, help="ROWSxCOLSxN, e.g. 40x40x40")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--alpha", type=float, default=None, help="chow: alpha")
    parser.add_argument("--delta", type=float, default=None, help="chow: diagonal shift")
    parser.add_argument("--theta", type=float, default=None, help="kahan: angle in (0, pi/2)")
    parser.add_argument("--pert", type=float, default=None, help="kahan: diagonal perturbation")
    parser.add_argument("--cycle-len", dest="cycle_len", type=int, default=None, help="cycol: column period")
    parser.add_argument("--gear-i", dest="gear_i", type=int, default=None, help="gearmat: first-row corner")
    parser.add_argument("--gear-j", dest="gear_j", type=int, default=None, help="gearmat: last-row corner")
    parser.add_argument(
        "--slice-rule", dest="slice_rule", default=None, choices=[r.value for r in SliceRule],
        help="how the base matrix fills the frontal slices",
    )
    parser.add_argument("--magnitude", type=float, default=None, help="perturbation size")
