"""Residuals of the defining equations of generalized inverses.

    E1  = ||S - S*X*S||          E2 = ||X - X*S*X||
    E3  = ||S*X - (S*X)^*||      E4 = ||X*S - (X*S)^*||
    E5  = ||S*X - X*S||          E1k = ||X*S^(k+1) - S^k||

All norms are Frobenius. The tensor path measures tensors entrywise; the
flattened path measures block-circulant images, which multiplies every
residual by sqrt(n).
"""

import hashlib
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

import numpy as np

from app.core.exceptions import DimensionMismatchError, InvalidParameterError
from app.tensors.fourier import to_fourier
from app.tensors.structure import bcirc
from app.tensors.tensor import Tensor3

RESIDUAL_NAMES = ("e1", "e2", "e3", "e4", "e5", "e1k")


class ResidualPath(str, Enum):
    TENSOR = "tensor"
    FLATTENED = "flattened"


@dataclass(frozen=True)
class ErrorReport:
    """Residuals of one (S, X) pair on one path.

    ``e5`` is None when slices are not square; ``e1k`` is None unless a power
    ``k`` was requested.
    """

    e1: float
    e2: float
    e3: float
    e4: float
    e5: float | None
    e1k: float | None
    k: int | None
    path: ResidualPath
    inputs_digest: str

    def values(self) -> dict[str, float]:
        """Residuals that were evaluated, by name."""
        return {
            name: value
            for name in RESIDUAL_NAMES
            if (value := getattr(self, name)) is not None
        }

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["path"] = self.path.value
        return data


def _check_pair(s_shape: tuple[int, ...], x_shape: tuple[int, ...], k: int | None) -> None:
    if x_shape[0] != s_shape[1] or x_shape[1] != s_shape[0] or x_shape[2:] != s_shape[2:]:
        raise DimensionMismatchError(
            "residuals", f"X must have shape {s_shape[1]}x{s_shape[0]} per slice",
            s=list(s_shape), x=list(x_shape),
        )
    if k is None:
        return
    if s_shape[0] != s_shape[1]:
        raise DimensionMismatchError("residuals", "E1k needs square slices", s=list(s_shape))
    if not 1 <= k <= s_shape[0]:
        raise InvalidParameterError(f"power k={k} outside [1, {s_shape[0]}]", k=k)


def _digest(*arrays: np.ndarray) -> str:
    h = hashlib.sha256()
    for array in arrays:
        h.update(str(array.shape).encode())
        h.update(np.ascontiguousarray(array).tobytes())
    return h.hexdigest()


def _conj_t(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def _evaluate(
    s: np.ndarray,
    x: np.ndarray,
    k: int | None,
    norm_scale: float,
) -> dict[str, float | None]:
    """Residuals on stacked matrices of shape (batch, rows, cols)."""

    def fro(a: np.ndarray) -> float:
        return float(np.linalg.norm(a)) * norm_scale

    sx, xs = s @ x, x @ s
    out: dict[str, float | None] = {
        "e1": fro(s - sx @ s),
        "e2": fro(x - xs @ x),
        "e3": fro(sx - _conj_t(sx)),
        "e4": fro(xs - _conj_t(xs)),
        "e5": fro(sx - xs) if sx.shape == xs.shape else None,
        "e1k": None,
    }
    if k is not None:
        sk = np.linalg.matrix_power(s, k)
        out["e1k"] = fro(x @ sk @ s - sk)
    return out


def residuals(
    s: Tensor3,
    x: Tensor3,
    k: int | None = None,
    path: ResidualPath | str = ResidualPath.TENSOR,
) -> ErrorReport:
    """Residual suite for a tensor S and a candidate inverse X.

    The tensor path works on Fourier slices: t-transposes become slice
    adjoints and the Frobenius norm is recovered through Parseval.

    Raises:
        DimensionMismatchError: If X is not q×p×n for p×q×n S, or k is given
            for non-square slices
        InvalidParameterError: If k is outside [1, p]
    """
    path = ResidualPath(path)
    _check_pair(s.shape, x.shape, k)
    if path is ResidualPath.FLATTENED:
        return matrix_residuals(bcirc(s).entries, bcirc(x).entries, k, digest=_tensor_digest(s, x))

    fs, fx = to_fourier(s), to_fourier(x)
    values = _evaluate(fs.batched(), fx.batched(), k, 1.0 / np.sqrt(s.n))
    return ErrorReport(**values, k=k, path=path, inputs_digest=_tensor_digest(s, x))


def matrix_residuals(
    s: np.ndarray, x: np.ndarray, k: int | None = None, digest: str | None = None
) -> ErrorReport:
    """Residual suite for dense matrices (the flattened path)."""
    s, x = np.asarray(s), np.asarray(x)
    _check_pair(s.shape, x.shape, k)
    values = _evaluate(s[None], x[None], k, 1.0)
    return ErrorReport(
        **values, k=k, path=ResidualPath.FLATTENED, inputs_digest=digest or _digest(s, x)
    )


def _tensor_digest(s: Tensor3, x: Tensor3) -> str:
    return hashlib.sha256((s.digest() + x.digest()).encode()).hexdigest()

