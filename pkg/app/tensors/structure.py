"""Structural operators: bcirc, unfold/fold and their inverses."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from app.core.exceptions import DimensionMismatchError, NotBlockCirculantError
from app.tensors.tensor import Tensor3

# Relative deviation accepted by bcirc_inv(strict=True)
CIRCULANT_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """Dense matrix built from a tensor, remembering the (p, q, n) it came from."""

    entries: np.ndarray
    provenance: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        entries = np.array(self.entries, copy=True)
        if entries.ndim != 2:
            raise DimensionMismatchError("BlockMatrix", "entries must be a 2-d array")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])


def _circulant_indices(n: int) -> np.ndarray:
    # block (i, j) of bcirc holds slice (i - j) mod n
    return (np.arange(n)[:, None] - np.arange(n)[None, :]) % n


def bcirc(tensor: Tensor3) -> BlockMatrix:
    """Block-circulant matrix of a tensor.

    The first block column stacks the frontal slices and every further block
    column is the cyclic downshift of its predecessor.

    Returns:
        pn×qn BlockMatrix
    """
    p, q, n = tensor.shape
    blocks = tensor.data[:, :, _circulant_indices(n)]  # (p, q, n, n)
    entries = blocks.transpose(2, 0, 3, 1).reshape(n * p, n * q)
    return BlockMatrix(entries, provenance=(p, q, n))


def unfold(tensor: Tensor3) -> BlockMatrix:
    """Stack frontal slices vertically into a pn×q matrix."""
    p, q, n = tensor.shape
    return BlockMatrix(tensor.data.transpose(2, 0, 1).reshape(n * p, q), provenance=(p, q, n))


def fold(matrix: BlockMatrix | np.ndarray, p: int, q: int, n: int) -> Tensor3:
    """Inverse of :func:`unfold`.

    Raises:
        DimensionMismatchError: If the matrix is not pn×q
    """
    entries = matrix.entries if isinstance(matrix, BlockMatrix) else np.asarray(matrix)
    if entries.shape != (n * p, q):
        raise DimensionMismatchError(
            "fold", f"expected a {n * p}x{q} matrix, got {entries.shape[0]}x{entries.shape[1]}",
            expected=[n * p, q], actual=list(entries.shape),
        )
    return Tensor3(entries.reshape(n, p, q).transpose(1, 2, 0))


def bcirc_inv(
    matrix: BlockMatrix | np.ndarray,
    p: int,
    q: int,
    n: int,
    strict: bool = False,
    rtol: float = CIRCULANT_RTOL,
) -> Tensor3:
    """Tensor whose frontal slices are the first block column of ``matrix``.

    Args:
        matrix: pn×qn matrix
        p, q, n: Target tensor dimensions
        strict: Reject matrices that are not block circulant
        rtol: Allowed relative Frobenius deviation in strict mode

    Raises:
        DimensionMismatchError: If the matrix is not pn×qn
        NotBlockCirculantError: In strict mode, if the structure check fails
    """
    entries = matrix.entries if isinstance(matrix, BlockMatrix) else np.asarray(matrix)
    if entries.shape != (n * p, n * q):
        raise DimensionMismatchError(
            "bcirc_inv", f"expected a {n * p}x{n * q} matrix, got {entries.shape[0]}x{entries.shape[1]}",
            expected=[n * p, n * q], actual=list(entries.shape),
        )
    tensor = fold(entries[:, :q], p, q, n)

    if strict:
        scale = max(float(np.linalg.norm(entries)), np.finfo(float).tiny)
        deviation = float(np.linalg.norm(bcirc(tensor).entries - entries)) / scale
        if deviation > rtol:
            raise NotBlockCirculantError(deviation, rtol)
    return tensor


def tensor_block_diag(a: Tensor3, b: Tensor3) -> Tensor3:
    """Slicewise block diagonal ``diag(A_k, B_k)``.

    The t-product acts blockwise on such tensors, which makes them the natural
    way to assemble operands with a known spectral structure.
    """
    if a.n != b.n:
        raise DimensionMismatchError("tensor_block_diag", "slice counts differ", left=a.n, right=b.n)
    slices = [scipy.linalg.block_diag(sa, sb) for sa, sb in zip(a.slices(), b.slices(), strict=True)]
    return Tensor3(np.stack(slices, axis=2))
