"""Request and response schemas for the command-line surface.

argparse collects raw values; these models validate them before any tensor
is touched, so a malformed invocation fails with exit code 2.
"""

import re
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.bench.harness import BenchOp
from app.core.config import parse_threads
from app.gallery.generators import GalleryFamily, GallerySpec, SliceRule
from app.outer.engine import InverseKind
from app.outer.results import Method
from app.outer.tqr import QrFormula

_SIZE = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*[xX]\s*(\d+)\s*$")


def parse_size(text: str) -> tuple[int, int, int]:
    """``"40x40x40"`` -> ``(40, 40, 40)``."""
    match = _SIZE.match(text)
    if match is None:
        raise ValueError(f"size must look like ROWSxCOLSxN, got {text!r}")
    dims = tuple(int(g) for g in match.groups())
    if min(dims) < 1:
        raise ValueError(f"size dimensions must be positive, got {text!r}")
    return dims  # type: ignore[return-value]


def parse_ranks(text: str) -> int | list[int]:
    """``"4"`` -> ``4``, ``"4,4,4"`` -> ``[4, 4, 4]`` (one target rank per Fourier slice)."""
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"rank must be an integer or a comma-separated list, got {text!r}") from None
    return values[0] if len(values) == 1 else values


class CommandModel(BaseModel):
    model_config = ConfigDict(extra="ignore", frozen=True)


class GlobalOptions(CommandModel):
    """Flags shared by every subcommand."""

    tol: float | None = Field(default=None, gt=0, description="Relative rank tolerance")
    threads: int | None = Field(default=None, description="Worker threads, or 'auto'")
    log_level: str | None = None
    log_format: Literal["json", "console"] | None = None

    @field_validator("threads", mode="before")
    @classmethod
    def check_threads(cls, v: Any) -> Any:
        return parse_threads(v)


class TprodRequest(CommandModel):
    a: Path
    b: Path
    output: Path


class InverseRequest(CommandModel):
    """Options of ``inv``."""

    source: Path
    output: Path
    kind: InverseKind
    method: Method = Method.DIRECT
    range_path: Path | None = None
    null_path: Path | None = None
    b_path: Path | None = None
    c_path: Path | None = None
    power: int | None = Field(default=None, ge=0)
    rank: int | list[int] | None = None
    oversample: int | None = Field(default=None, ge=0)
    seed: int | None = Field(default=None, ge=0)
    formula: QrFormula = QrFormula.PROJECTED

    @field_validator("rank", mode="before")
    @classmethod
    def check_rank(cls, v: Any) -> Any:
        v = parse_ranks(v) if isinstance(v, str) else v
        values = [v] if isinstance(v, int) else (v or [])
        if any(r < 1 for r in values):
            raise ValueError("target ranks must be positive")
        return v

    @model_validator(mode="after")
    def check_prescription(self) -> "InverseRequest":
        if (self.b_path is None) != (self.c_path is None):
            raise ValueError("--b and --c must be given together")
        if self.kind is InverseKind.OUTER:
            given = [self.range_path, self.null_path, self.b_path]
            if all(p is None for p in given):
                raise ValueError("--kind outer needs --range, --null, or --b/--c")
            if self.method is not Method.DIRECT and self.range_path is None:
                raise ValueError("the QR methods need --range T.t3")
        if self.power is not None and self.kind is not InverseKind.DRAZIN:
            raise ValueError("--power only applies to --kind drazin")
        if self.rank is not None and self.method is not Method.RAND_QR:
            raise ValueError("--rank only applies to --method rqr")
        return self


class VerifyRequest(CommandModel):
    s: Path
    x: Path
    k: int | None = Field(default=None, ge=1)
    csv: Path | None = None
    path: Literal["tensor", "flattened", "both"] = "tensor"


class GalleryOptions(CommandModel):
    """Family, size and family parameters of a gallery tensor."""

    family: GalleryFamily
    size: tuple[int, int, int]
    seed: int = Field(default=0, ge=0)
    alpha: float = 1.0
    delta: float = 0.0
    theta: float = 1.2
    pert: float = 25.0
    cycle_len: int | None = None
    gear_i: int | None = None
    gear_j: int | None = None
    slice_rule: SliceRule = SliceRule.REPLICATE
    magnitude: float = 1e-3

    @field_validator("size", mode="before")
    @classmethod
    def check_size(cls, v: Any) -> Any:
        return parse_size(v) if isinstance(v, str) else v

    def to_spec(self) -> GallerySpec:
        rows, cols, n = self.size
        return GallerySpec(
            family=self.family, rows=rows, cols=cols, n=n,
            alpha=self.alpha, delta=self.delta, theta=self.theta, pert=self.pert,
            cycle_len=self.cycle_len, gear_i=self.gear_i, gear_j=self.gear_j,
            slice_rule=self.slice_rule, seed=self.seed, magnitude=self.magnitude,
        )


class GenRequest(GalleryOptions):
    output: Path


class BenchRequest(GalleryOptions):
    op: BenchOp
    trials: int | None = None
    power: int | None = Field(default=None, ge=1)
    csv: Path | None = None
    json_path: Path | None = None


# Responses printed on stdout


class TensorResponse(BaseModel):
    output: str
    shape: list[int]
    scalar_kind: str
    digest: str


class InverseResponse(TensorResponse):
    kind: str
    prescription: str
    method: str
    ranks_checked: list[tuple[str, int]]
    tolerance_used: float
    extras: dict[str, Any] = Field(default_factory=dict)


class GenResponse(TensorResponse):
    family: str
    slice_rule: str
    seed: int
    parameters: dict[str, float | int]


class VerifyResponse(BaseModel):
    s_digest: str
    x_digest: str
    reports: list[dict[str, Any]]
