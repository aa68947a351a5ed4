"""Dense third-order tensor value type."""

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from app.core.exceptions import DimensionMismatchError, InvalidParameterError


class ScalarKind(str, Enum):
    """Scalar field of a tensor's entries."""

    REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True, eq=False)
class Tensor3:
    """Immutable dense p×q×n tensor.

    Entries live in a Fortran-ordered ``(p, q, n)`` array, so frontal slice
    ``k`` is contiguous and column-major. Real tensors are stored as float64,
    complex ones as complex128; a real tensor therefore never carries an
    imaginary part.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        raw = np.asarray(self.data)
        if raw.ndim != 3:
            raise InvalidParameterError(
                f"Tensor3 needs a 3-d array, got {raw.ndim} dimensions", shape=list(raw.shape)
            )
        if min(raw.shape) < 1:
            raise InvalidParameterError("Tensor3 dimensions must be positive", shape=list(raw.shape))
        dtype = np.complex128 if np.iscomplexobj(raw) else np.float64
        stored = np.array(raw, dtype=dtype, order="F", copy=True)
        stored.flags.writeable = False
        object.__setattr__(self, "data", stored)

    @classmethod
    def from_slices(cls, slices: Sequence[ArrayLike]) -> "Tensor3":
        """Stack frontal slices ``T_1 .. T_n`` into a tensor."""
        mats = [np.atleast_2d(np.asarray(s)) for s in slices]
        if not mats:
            raise InvalidParameterError("at least one frontal slice is required")
        shape = mats[0].shape
        if any(m.shape != shape or m.ndim != 2 for m in mats):
            raise DimensionMismatchError(
                "from_slices", "frontal slices must share one 2-d shape",
                shapes=[list(m.shape) for m in mats],
            )
        return cls(np.stack(mats, axis=2))

    @classmethod
    def zeros(cls, p: int, q: int, n: int, kind: ScalarKind = ScalarKind.REAL) -> "Tensor3":
        dtype = np.complex128 if kind is ScalarKind.COMPLEX else np.float64
        return cls(np.zeros((p, q, n), dtype=dtype))

    @property
    def p(self) -> int:
        return int(self.data.shape[0])

    @property
    def q(self) -> int:
        return int(self.data.shape[1])

    @property
    def n(self) -> int:
        return int(self.data.shape[2])

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.n)

    @property
    def scalar_kind(self) -> ScalarKind:
        return ScalarKind.COMPLEX if np.iscomplexobj(self.data) else ScalarKind.REAL

    @property
    def is_real(self) -> bool:
        return self.scalar_kind is ScalarKind.REAL

    @property
    def is_square(self) -> bool:
        """True when frontal slices are square."""
        return self.p == self.q

    def frontal_slice(self, k: int) -> np.ndarray:
        """Return frontal slice ``k`` (zero-based) as a read-only p×q view."""
        if not 0 <= k < self.n:
            raise InvalidParameterError(f"slice index {k} outside [0, {self.n})", k=k, n=self.n)
        return self.data[:, :, k]

    def slices(self) -> list[np.ndarray]:
        return [self.data[:, :, k] for k in range(self.n)]

    def flat(self) -> np.ndarray:
        """Entries in storage order: slice by slice, column-major inside a slice."""
        return self.data.ravel(order="F")

    def conj(self) -> "Tensor3":
        return Tensor3(np.conj(self.data)) if not self.is_real else self

    def to_complex(self) -> "Tensor3":
        return Tensor3(self.data.astype(np.complex128))

    def digest(self) -> str:
        """SHA-256 of shape, scalar kind and raw entries."""
        h = hashlib.sha256()
        h.update(f"{self.p}x{self.q}x{self.n}:{self.scalar_kind.value}".encode())
        h.update(np.ascontiguousarray(self.flat()).tobytes())
        return h.hexdigest()

    def allclose(self, other: "Tensor3", rtol: float = 1e-10, atol: float = 1e-12) -> bool:
        """Entrywise closeness against another tensor of the same shape."""
        if self.shape != other.shape:
            return False
        return bool(np.allclose(self.data, other.data, rtol=rtol, atol=atol))

    # Linear combinations, needed for the bcirc linearity identity and the
    # representation formulas.

    def _check_same_shape(self, other: "Tensor3", op: str) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(
                op, f"shapes {self.shape} and {other.shape} differ",
                left=list(self.shape), right=list(other.shape),
            )

    def __add__(self, other: "Tensor3") -> "Tensor3":
        if not isinstance(other, Tensor3):
            return NotImplemented
        self._check_same_shape(other, "add")
        return Tensor3(self.data + other.data)

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        if not isinstance(other, Tensor3):
            return NotImplemented
        self._check_same_shape(other, "subtract")
        return Tensor3(self.data - other.data)

    def __neg__(self) -> "Tensor3":
        return Tensor3(-self.data)

    def __mul__(self, alpha: Any) -> "Tensor3":
        if not np.isscalar(alpha):
            return NotImplemented
        return Tensor3(alpha * self.data)

    __rmul__ = __mul__

    def __matmul__(self, other: "Tensor3") -> "Tensor3":
        """``S @ T`` is the t-product."""
        if not isinstance(other, Tensor3):
            return NotImplemented
        from app.tensors.algebra import tprod

        return tprod(self, other)

    def __repr__(self) -> str:
        return f"Tensor3({self.p}x{self.q}x{self.n}, {self.scalar_kind.value})"


def identity_tensor(m: int, n: int) -> Tensor3:
    """m×m×n identity: first frontal slice ``I_m``, the rest zero."""
    if m < 1 or n < 1:
        raise InvalidParameterError("identity_tensor needs m >= 1 and n >= 1", m=m, n=n)
    data = np.zeros((m, m, n))
    data[:, :, 0] = np.eye(m)
    return Tensor3(data)
