"""Classic test matrices, turned into tensors slice by slice.

Definitions follow the usual test-matrix gallery conventions; every
generator is a deterministic function of its parameters and seed.
"""

import math
from enum import Enum

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.tensors.tensor import Tensor3

logger = structlog.get_logger(__name__)


class GalleryFamily(str, Enum):
    CHOW = "chow"
    KAHAN = "kahan"
    CYCOL = "cycol"
    GEARMAT = "gearmat"


class SliceRule(str, Enum):
    """How the base matrix is spread across frontal slices."""

    REPLICATE = "replicate"
    SEEDED_PERTURB = "perturb"


class GallerySpec(BaseModel):
    """A gallery test tensor: family, parameters, size and slice rule."""

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    family: GalleryFamily
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    n: int = Field(ge=1)

    # chow
    alpha: float = 1.0
    delta: float = 0.0
    # kahan
    theta: float = 1.2
    pert: float = 25.0
    # cycol; None means max(round(cols / 4), 2)
    cycle_len: int | None = Field(default=None, ge=1)
    # gearmat; None means i = cols, j = -cols
    gear_i: int | None = None
    gear_j: int | None = None

    slice_rule: SliceRule = SliceRule.REPLICATE
    seed: int = 0
    magnitude: float = Field(default=1e-3, ge=0.0)

    @model_validator(mode="after")
    def check_family_parameters(self) -> "GallerySpec":
        if self.family is GalleryFamily.KAHAN and not 0.0 < self.theta < math.pi / 2:
            raise ValueError(f"kahan theta must lie in (0, pi/2), got {self.theta}")
        if self.family is GalleryFamily.GEARMAT:
            for name, value in (("gear_i", self.gear_i), ("gear_j", self.gear_j)):
                if value is not None and not 1 <= abs(value) <= self.cols:
                    raise ValueError(f"{name} must satisfy 1 <= |{name}| <= {self.cols}")
        return self

    @property
    def size_label(self) -> str:
        return f"{self.rows}x{self.cols}x{self.n}"

    @property
    def effective_cycle_len(self) -> int:
        return self.cycle_len if self.cycle_len is not None else max(round(self.cols / 4), 2)

    def parameters(self) -> dict[str, float | int]:
        """The parameters that shape this family's base matrix."""
        if self.family is GalleryFamily.CHOW:
            return {"alpha": self.alpha, "delta": self.delta}
        if self.family is GalleryFamily.KAHAN:
            return {"theta": self.theta, "pert": self.pert}
        if self.family is GalleryFamily.CYCOL:
            return {"cycle_len": self.effective_cycle_len}
        return {
            "gear_i": self.gear_i if self.gear_i is not None else self.cols,
            "gear_j": self.gear_j if self.gear_j is not None else -self.cols,
        }


def chow(rows: int, cols: int, alpha: float = 1.0, delta: float = 0.0) -> np.ndarray:
    """Lower Hessenberg Toeplitz: ``A_ij = alpha^(i-j+1)`` for ``i - j >= -1``, plus ``delta I``."""
    i = np.arange(rows)[:, None]
    j = np.arange(cols)[None, :]
    d = i - j
    a = np.where(d >= -1, np.power(float(alpha), np.maximum(d + 1, 0)), 0.0)
    return a + delta * np.eye(rows, cols)


def kahan(rows: int, cols: int, theta: float = 1.2, pert: float = 25.0) -> np.ndarray:
    """Upper trapezoidal Kahan matrix.

    ``diag(s^0 .. s^(m-1)) (I - c * strict_upper_ones)`` with ``s = sin(theta)``,
    ``c = cos(theta)``, plus ``pert * eps * diag(cols, cols-1, ..)`` to keep column
    pivoting from reordering it.
    """
    s, c = math.sin(theta), math.cos(theta)
    m = min(rows, cols)
    a = np.eye(rows, cols) - c * np.triu(np.ones((rows, cols)), 1)
    a = np.diag(s ** np.arange(rows)) @ a
    a[np.arange(m), np.arange(m)] += pert * np.finfo(float).eps * np.arange(cols, cols - m, -1)
    return a


def cycol(rows: int, cols: int, cycle_len: int, rng: np.random.Generator) -> np.ndarray:
    """Gaussian ``rows x cycle_len`` block with its columns repeated cyclically."""
    block = rng.standard_normal((rows, cycle_len))
    reps = -(-cols // cycle_len)
    return np.tile(block, (1, reps))[:, :cols]


def gearmat(rows: int, cols: int, i: int | None = None, j: int | None = None) -> np.ndarray:
    """Ones on the sub- and superdiagonals, signed corners at ``(1, |i|)`` and ``(rows, cols+1-|j|)``."""
    i = cols if i is None else i
    j = -cols if j is None else j
    a = np.eye(rows, cols, k=1) + np.eye(rows, cols, k=-1)
    a[0, abs(i) - 1] = math.copysign(1.0, i)
    a[rows - 1, cols - abs(j)] = math.copysign(1.0, j)
    return a


def base_matrix(spec: GallerySpec, rng: np.random.Generator) -> np.ndarray:
    if spec.family is GalleryFamily.CHOW:
        return chow(spec.rows, spec.cols, spec.alpha, spec.delta)
    if spec.family is GalleryFamily.KAHAN:
        return kahan(spec.rows, spec.cols, spec.theta, spec.pert)
    if spec.family is GalleryFamily.CYCOL:
        return cycol(spec.rows, spec.cols, spec.effective_cycle_len, rng)
    return gearmat(spec.rows, spec.cols, spec.gear_i, spec.gear_j)


def generate(spec: GallerySpec) -> Tensor3:
    """Build the gallery tensor described by ``spec``.

    ``REPLICATE`` copies the base matrix into every slice; ``SEEDED_PERTURB``
    adds independent Gaussian noise of size ``magnitude`` to each copy.
    """
    base_seq, noise_seq = np.random.SeedSequence(spec.seed).spawn(2)
    base = base_matrix(spec, np.random.default_rng(base_seq))
    data = np.repeat(base[:, :, None], spec.n, axis=2)
    if spec.slice_rule is SliceRule.SEEDED_PERTURB:
        noise = np.random.default_rng(noise_seq).standard_normal(data.shape)
        data = data + spec.magnitude * noise
    logger.debug(
        "gallery.generated", family=spec.family.value, size=spec.size_label,
        slice_rule=spec.slice_rule.value, seed=spec.seed,
    )
    return Tensor3(data)
