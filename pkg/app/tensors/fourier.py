"""Mode-3 DFT: moving tensors to and from the block-diagonal domain.

Forward transforms are unnormalized and inverse transforms carry the 1/n
factor, so a t-product becomes a product of Fourier slices with no scaling.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TypeVar

import numpy as np
import scipy.fft
import scipy.linalg
import structlog

from app.core.config import get_settings
from app.core.exceptions import DimensionMismatchError, RealnessViolatedError
from app.core.parallel import resolve_threads, slice_map
from app.tensors.structure import bcirc
from app.tensors.tensor import ScalarKind, Tensor3

logger = structlog.get_logger(__name__)

R = TypeVar("R")


@dataclass(frozen=True, eq=False)
class FourierStack:
    """The n complex p×q matrices ``D_k`` of a tensor in the Fourier domain.

    ``origin_kind`` records whether the spatial tensor was real; for real
    origins the slices obey ``D_{n-k} = conj(D_k)`` (zero-based).
    """

    slices: np.ndarray
    origin_kind: ScalarKind

    def __post_init__(self) -> None:
        data = np.asarray(self.slices, dtype=np.complex128)
        if data.ndim != 3:
            raise DimensionMismatchError("FourierStack", "slices must form a (p, q, n) array")
        data.flags.writeable = False
        object.__setattr__(self, "slices", data)

    @classmethod
    def from_matrices(cls, mats: Sequence[np.ndarray], origin_kind: ScalarKind) -> "FourierStack":
        return cls(np.stack([np.asarray(m) for m in mats], axis=2), origin_kind)

    @property
    def p(self) -> int:
        return int(self.slices.shape[0])

    @property
    def q(self) -> int:
        return int(self.slices.shape[1])

    @property
    def n(self) -> int:
        return int(self.slices.shape[2])

    @property
    def is_real_origin(self) -> bool:
        return self.origin_kind is ScalarKind.REAL

    def slice(self, k: int) -> np.ndarray:
        return self.slices[:, :, k]

    def batched(self) -> np.ndarray:
        """(n, p, q) view for numpy's stacked linear algebra."""
        return np.moveaxis(self.slices, 2, 0)

    @classmethod
    def from_batched(cls, batch: np.ndarray, origin_kind: ScalarKind) -> "FourierStack":
        return cls(np.moveaxis(batch, 0, 2), origin_kind)

    @cached_property
    def singular_values(self) -> np.ndarray:
        """Singular values per slice, shape (n, min(p, q)), descending."""
        return np.linalg.svd(self.batched(), compute_uv=False)

    def spectral_norm(self) -> float:
        """Largest singular value over all slices, i.e. ``||bcirc(T)||_2``."""
        sv = self.singular_values
        return float(sv.max()) if sv.size else 0.0

    def fro_norm(self) -> float:
        return float(np.linalg.norm(self.slices))

    def matmul(self, other: "FourierStack") -> "FourierStack":
        """Slicewise product ``D_k E_k``: the t-product in this domain."""
        if self.q != other.p or self.n != other.n:
            raise DimensionMismatchError(
                "tprod", f"cannot multiply {self.p}x{self.q}x{self.n} by {other.p}x{other.q}x{other.n}",
                left=[self.p, self.q, self.n], right=[other.p, other.q, other.n],
            )
        kind = (
            ScalarKind.REAL
            if self.is_real_origin and other.is_real_origin
            else ScalarKind.COMPLEX
        )
        return FourierStack.from_batched(self.batched() @ other.batched(), kind)

    def adjoint(self) -> "FourierStack":
        """Conjugate transpose of every slice; the image of the t-transpose."""
        return FourierStack(np.conj(self.slices.transpose(1, 0, 2)), self.origin_kind)

    def conjugate_symmetry_defect(self) -> float:
        """``max_k ||D_{n-k} - conj(D_k)||_F`` relative to the stack norm."""
        if self.n == 1:
            return float(np.linalg.norm(self.slices.imag)) / max(self.fro_norm(), 1.0)
        mirrored = np.conj(self.slices[:, :, (-np.arange(self.n)) % self.n])
        worst = max(
            float(np.linalg.norm(self.slices[:, :, k] - mirrored[:, :, k])) for k in range(self.n)
        )
        return worst / max(self.fro_norm(), 1.0)

    def block_diagonal(self) -> np.ndarray:
        return scipy.linalg.block_diag(*(self.slice(k) for k in range(self.n)))


@dataclass(frozen=True)
class RankTolerance:
    """Numerical rank policy shared by every rank decision.

    A singular value counts toward rank when it exceeds
    ``rtol * sigma_max`` where ``sigma_max`` is taken over all Fourier slices
    of the tensor, which is the usual matrix-rank cutoff applied to
    ``bcirc(T)``. The default ``rtol`` is ``max(p*n, q*n) * eps``.
    """

    rtol: float | None = None

    @classmethod
    def resolve(cls, tol: "RankTolerance | float | None") -> "RankTolerance":
        if isinstance(tol, RankTolerance):
            return tol
        if tol is None:
            return cls(get_settings().rank_rtol)
        return cls(float(tol))

    def relative(self, rows: int, cols: int, n: int = 1) -> float:
        if self.rtol is not None:
            return self.rtol
        return max(rows * n, cols * n) * float(np.finfo(float).eps)

    def cutoff(self, stack: FourierStack) -> float:
        return self.relative(stack.p, stack.q, stack.n) * stack.spectral_norm()

    def slice_ranks(self, stack: FourierStack) -> list[int]:
        """Numerical rank of every Fourier slice under the stack-wide cutoff."""
        cut = self.cutoff(stack)
        return [int(c) for c in np.count_nonzero(stack.singular_values > cut, axis=1)]


TolLike = RankTolerance | float | None


def to_fourier(tensor: Tensor3, threads: int | None = None) -> FourierStack:
    """Unnormalized DFT along the third mode."""
    slices = scipy.fft.fft(tensor.data, axis=2, workers=resolve_threads(threads))
    return FourierStack(slices, tensor.scalar_kind)


def from_fourier(
    stack: FourierStack,
    cleanup_rtol: float | None = None,
    threads: int | None = None,
) -> Tensor3:
    """Inverse DFT along the third mode.

    For real-origin stacks the imaginary residue is dropped when it is below
    ``cleanup_rtol * (1 + ||stack||_F)``.

    Raises:
        RealnessViolatedError: If a real-origin stack leaves a larger imaginary part
    """
    spatial = scipy.fft.ifft(stack.slices, axis=2, workers=resolve_threads(threads))
    if not stack.is_real_origin:
        return Tensor3(spatial)

    rtol = get_settings().imag_cleanup_rtol if cleanup_rtol is None else cleanup_rtol
    tolerance = rtol * (1.0 + stack.fro_norm())
    residue = float(np.abs(spatial.imag).max())
    if residue > tolerance:
        logger.warning("fourier.realness_violated", residue=residue, tolerance=tolerance)
        raise RealnessViolatedError(residue, tolerance)
    return Tensor3(spatial.real)


def map_slices(
    fn: Callable[[int, np.ndarray], R],
    stack: FourierStack,
    threads: int | None = None,
    conjugate: Callable[[R], R] | None = None,
) -> list[R]:
    """Evaluate ``fn(k, D_k)`` for every slice.

    When ``conjugate`` is given and the stack has a real origin, only slices
    ``0 .. n//2`` are evaluated and slice ``k > n//2`` is filled with
    ``conjugate(result[n - k])``. Use it where per-slice choices (pivots,
    sketches) must be mirrored exactly for the spatial result to stay real.
    """
    workers = resolve_threads(threads)
    n = stack.n
    if conjugate is not None and stack.is_real_origin and n > 2:
        half = n // 2 + 1
        head = slice_map(lambda k: fn(k, stack.slice(k)), range(half), workers)
        return head + [conjugate(head[n - k]) for k in range(half, n)]
    return slice_map(lambda k: fn(k, stack.slice(k)), range(n), workers)


def diagonalization_defect(tensor: Tensor3) -> float:
    """Frobenius defect of the block diagonalization of ``bcirc(T)``.

    Conjugating ``bcirc(T)`` by the unitary DFT Kronecker factors
    ``(F_n ⊗ I_p)`` and ``(F_n^* ⊗ I_q)`` yields ``blockdiag(D_1 .. D_n)``.
    """
    p, q, n = tensor.shape
    dft = scipy.linalg.dft(n, scale="sqrtn")
    left = np.kron(dft, np.eye(p))
    right = np.kron(dft.conj().T, np.eye(q))
    transformed = left @ bcirc(tensor).entries @ right
    return float(np.linalg.norm(transformed - to_fourier(tensor).block_diagonal()))
