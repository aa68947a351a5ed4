"""Result types for outer inverse computations."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from app.linalg.qr import PivotedQr
from app.tensors.algebra import t_transpose, tprod_chain
from app.tensors.tensor import Tensor3


class PrescriptionKind(str, Enum):
    """Which range/null-space prescription an inverse satisfies."""

    RANGE_ONLY = "range"
    NULL_ONLY = "null"
    RANGE_NULL = "range-null"
    FULL_RANK = "full-rank"
    QR_FROM = "qr"
    MOORE_PENROSE = "mp"
    GROUP = "group"
    DRAZIN = "drazin"


class Method(str, Enum):
    """Computational route."""

    DIRECT = "direct"
    QR = "qr"
    RAND_QR = "rqr"


@dataclass(frozen=True)
class Prescription:
    kind: PrescriptionKind
    power: int | None = None

    def __str__(self) -> str:
        if self.power is not None:
            return f"{self.kind.value}(k={self.power})"
        return self.kind.value


@dataclass(frozen=True, eq=False)
class OuterResult:
    """A computed outer inverse and how it was obtained.

    Attributes:
        inverse: The tensor X
        prescription: Range/null prescription X satisfies
        ranks_checked: Every rank equality the existence condition demands,
            as (name, value) pairs
        tolerance_used: Relative rank tolerance applied
        method: Computational route
        range_witness: W with ``X = R * W`` for the range-defining tensor R
        null_witness: V with ``X = V * N`` for the null-space-defining tensor N
    """

    inverse: Tensor3
    prescription: Prescription
    ranks_checked: tuple[tuple[str, int], ...]
    tolerance_used: float
    method: Method = Method.DIRECT
    range_witness: Tensor3 | None = None
    null_witness: Tensor3 | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON-friendly summary (without tensor entries)."""
        return {
            "shape": list(self.inverse.shape),
            "scalar_kind": self.inverse.scalar_kind.value,
            "prescription": str(self.prescription),
            "method": self.method.value,
            "ranks_checked": [[name, value] for name, value in self.ranks_checked],
            "tolerance_used": self.tolerance_used,
            **self.extras,
        }


@dataclass(frozen=True, eq=False)
class TqrPartition:
    """Block t-QR factors ``T * P = Q̃ * R̃`` of a q×p×n tensor with slice rank s.

    Attributes:
        q_tilde: q×s×n, orthonormal under the t-product
        r_tilde: s×p×n
        permutation: p×p×n permutation tensor
        s: Uniform Fourier-slice rank
        slice_factors: Per-slice pivoted QR in the Fourier domain
    """

    q_tilde: Tensor3
    r_tilde: Tensor3
    permutation: Tensor3
    s: int
    slice_factors: tuple[PivotedQr, ...]

    def reconstruct(self) -> Tensor3:
        """``Q̃ * R̃ * P*``, which equals the factored tensor."""
        return tprod_chain(self.q_tilde, self.r_tilde, t_transpose(self.permutation))
