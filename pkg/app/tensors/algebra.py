"""t-product algebra: products, transposes, inverses, norms, rank and index."""

import numpy as np
import structlog

from app.core.exceptions import DimensionMismatchError, InvalidParameterError, SingularError
from app.linalg.kernels import lu_inverse, power_index
from app.tensors.fourier import (
    FourierStack,
    RankTolerance,
    TolLike,
    from_fourier,
    map_slices,
    to_fourier,
)
from app.tensors.structure import bcirc, fold, unfold
from app.tensors.tensor import Tensor3, identity_tensor

logger = structlog.get_logger(__name__)


def _check_product(s: Tensor3, t: Tensor3) -> None:
    if s.q != t.p or s.n != t.n:
        raise DimensionMismatchError(
            "tprod", f"cannot multiply {s.p}x{s.q}x{s.n} by {t.p}x{t.q}x{t.n}",
            left=list(s.shape), right=list(t.shape),
        )


def _check_square(t: Tensor3, op: str) -> None:
    if not t.is_square:
        raise DimensionMismatchError(op, "frontal slices must be square", shape=list(t.shape))


def tprod(s: Tensor3, t: Tensor3, threads: int | None = None) -> Tensor3:
    """t-product ``S * T`` of a p×q×n and a q×l×n tensor.

    Computed as slicewise matrix products in the Fourier domain.

    Raises:
        DimensionMismatchError: On inner dimension or slice count mismatch
    """
    _check_product(s, t)
    product = to_fourier(s, threads).matmul(to_fourier(t, threads))
    return from_fourier(product, threads=threads)


def tprod_bcirc(s: Tensor3, t: Tensor3) -> Tensor3:
    """t-product by its definition ``fold(bcirc(S) unfold(T))``."""
    _check_product(s, t)
    return fold(bcirc(s).entries @ unfold(t).entries, s.p, t.q, s.n)


def tprod_chain(*tensors: Tensor3, threads: int | None = None) -> Tensor3:
    """Left-to-right t-product of several tensors with one transform each."""
    if not tensors:
        raise DimensionMismatchError("tprod_chain", "at least one tensor is required")
    for left, right in zip(tensors, tensors[1:], strict=False):
        _check_product(left, right)
    stack = to_fourier(tensors[0], threads)
    for tensor in tensors[1:]:
        stack = stack.matmul(to_fourier(tensor, threads))
    return from_fourier(stack, threads=threads)


def t_transpose(t: Tensor3) -> Tensor3:
    """Conjugate t-transpose ``T*``, with ``bcirc(T*) = bcirc(T)^H``.

    Every slice is conjugate-transposed and slices 2..n are reversed.
    """
    order = (-np.arange(t.n)) % t.n
    return Tensor3(np.conj(t.data.transpose(1, 0, 2)[:, :, order]))


def t_inverse(t: Tensor3, tol: TolLike = None, threads: int | None = None) -> Tensor3:
    """Inverse of an m×m×n tensor, slice by slice in the Fourier domain.

    Raises:
        DimensionMismatchError: If slices are not square
        SingularError: If some Fourier slice has numerical rank below m
    """
    _check_square(t, "t_inverse")
    stack = to_fourier(t, threads)
    ranks = RankTolerance.resolve(tol).slice_ranks(stack)
    if min(ranks) < t.p:
        raise SingularError("tensor is not invertible", slice_ranks=ranks, expected=t.p)
    inverses = map_slices(lambda _k, d: lu_inverse(d), stack, threads)
    return from_fourier(FourierStack.from_matrices(inverses, stack.origin_kind), threads=threads)


def t_power(t: Tensor3, k: int, threads: int | None = None) -> Tensor3:
    """``T^k`` by repeated t-product; ``k = 0`` gives the identity."""
    _check_square(t, "t_power")
    if k < 0:
        raise InvalidParameterError("t_power needs a non-negative power", k=k)
    if k == 0:
        return identity_tensor(t.p, t.n)
    stack = to_fourier(t, threads)
    powered = np.linalg.matrix_power(stack.batched(), k)
    return from_fourier(FourierStack.from_batched(powered, stack.origin_kind), threads=threads)


def fro_norm(t: Tensor3) -> float:
    """Root-sum-square of all entries (no sqrt(n) factor)."""
    return float(np.linalg.norm(t.data))


def spec_norm(t: Tensor3) -> float:
    """Largest singular value over all Fourier slices, equal to ``||bcirc(T)||_2``."""
    return to_fourier(t).spectral_norm()


def cond(t: Tensor3, tol: TolLike = None) -> float:
    """``spec_norm(T) * spec_norm(T^-1)``.

    Raises:
        SingularError: If T is not invertible
    """
    return spec_norm(t) * spec_norm(t_inverse(t, tol))


def slice_ranks(t: Tensor3 | FourierStack, tol: TolLike = None) -> list[int]:
    stack = t if isinstance(t, FourierStack) else to_fourier(t)
    return RankTolerance.resolve(tol).slice_ranks(stack)


def t_rank(t: Tensor3 | FourierStack, tol: TolLike = None) -> int:
    """Sum of the numerical ranks of the Fourier slices, i.e. ``rank(bcirc(T))``."""
    return sum(slice_ranks(t, tol))


def t_index(t: Tensor3, tol: TolLike = None, threads: int | None = None) -> int:
    """Largest Fourier-slice index, equal to ``ind(bcirc(T))``.

    The rank of ``D_k^j`` is judged against ``rtol * sigma_max(T)^j`` with
    ``sigma_max`` the spectral norm of the whole tensor.
    """
    _check_square(t, "t_index")
    stack = to_fourier(t, threads)
    rtol = RankTolerance.resolve(tol).relative(t.p, t.q, t.n)
    scale = stack.spectral_norm()
    indices = map_slices(lambda _k, d: power_index(d, scale, rtol), stack, threads)
    logger.debug("t_index.slices", indices=indices)
    return max(indices)
