"""Moore-Penrose, group and Drazin inverses as outer inverses."""

from dataclasses import replace

import numpy as np
import structlog

from app.core.exceptions import DimensionMismatchError, IndexTooLargeError, InvalidParameterError
from app.linalg.kernels import drazin_slice
from app.outer.direct import fourier_one_inverse
from app.outer.existence import stack_rank
from app.outer.results import OuterResult, Prescription, PrescriptionKind
from app.tensors.algebra import t_index
from app.tensors.fourier import (
    FourierStack,
    RankTolerance,
    TolLike,
    from_fourier,
    map_slices,
    to_fourier,
)
from app.tensors.tensor import Tensor3

logger = structlog.get_logger(__name__)


def moore_penrose(s: Tensor3, tol: TolLike = None, threads: int | None = None) -> OuterResult:
    """Moore-Penrose inverse ``S^†``, the outer inverse with range ``R(S*)`` and null space ``N(S*)``.

    Computed as the slicewise pseudoinverse in the Fourier domain.
    """
    policy = RankTolerance.resolve(tol)
    fs = to_fourier(s, threads)
    ranks = {
        "rank_t(S)": stack_rank(fs, policy),
        "rank_t(S^*)": stack_rank(fs.adjoint(), policy),
    }
    x = from_fourier(fourier_one_inverse(fs, policy, threads), threads=threads)
    logger.info("outer_inverse.computed", prescription="mp", ranks=ranks)
    return OuterResult(
        inverse=x,
        prescription=Prescription(PrescriptionKind.MOORE_PENROSE),
        ranks_checked=tuple(ranks.items()),
        tolerance_used=policy.relative(fs.p, fs.q, fs.n),
    )


def one_inverse_tensor(t: Tensor3, tol: TolLike = None, threads: int | None = None) -> Tensor3:
    """A tensor {1}-inverse, ``bcirc^-1`` of a {1}-inverse of ``bcirc(T)``.

    Realized slicewise; the slice {1}-inverse is the pseudoinverse.
    """
    stack = to_fourier(t, threads)
    return from_fourier(fourier_one_inverse(stack, RankTolerance.resolve(tol), threads), threads=threads)


def _core_inverse(t: Tensor3, k: int, tol: TolLike, threads: int | None) -> OuterResult:
    """Outer inverse with range ``R(T^k)`` and null space ``N(T^k)`` for k at or above the index.

    Ranks of slice powers are judged against ``rtol * sigma_max(T)^k``, the
    cutoff ``t_index`` uses, so the two never disagree about a slice.
    """
    policy = RankTolerance.resolve(tol)
    stack = to_fourier(t, threads)
    rtol = policy.relative(t.p, t.q, t.n)
    scale = stack.spectral_norm()
    parts = map_slices(
        lambda _k, d: drazin_slice(d, k, scale, rtol), stack, threads,
        conjugate=lambda part: (np.conj(part[0]), part[1]),
    )
    inverses = FourierStack.from_matrices([x for x, _ in parts], stack.origin_kind)
    return OuterResult(
        inverse=from_fourier(inverses, threads=threads),
        prescription=Prescription(PrescriptionKind.DRAZIN, power=k),
        ranks_checked=(("rank_t(T^k)", sum(r for _, r in parts)),),
        tolerance_used=rtol,
    )


def drazin(
    t: Tensor3,
    tol: TolLike = None,
    threads: int | None = None,
    power: int | None = None,
) -> OuterResult:
    """Drazin inverse ``T^D``, the outer inverse with range ``R(T^k)`` and null space ``N(T^k)``.

    Args:
        t: Tensor with square slices
        tol: Rank tolerance
        threads: Worker threads
        power: k to use; defaults to ``t_index(T)`` and may not be smaller

    Raises:
        InvalidParameterError: If ``power`` is below the index
    """
    if not t.is_square:
        raise DimensionMismatchError("drazin", "frontal slices must be square", shape=list(t.shape))
    index = t_index(t, tol, threads)
    k = index if power is None else power
    if k < index:
        raise InvalidParameterError(f"power {k} is below the t-index {index}", power=k, index=index)

    result = _core_inverse(t, k, tol, threads)
    logger.info("outer_inverse.computed", prescription="drazin", power=k, index=index)
    return replace(result, extras={"index": index})


def group_inverse(t: Tensor3, tol: TolLike = None, threads: int | None = None) -> OuterResult:
    """Group inverse ``T^#`` (range ``R(T)``, null space ``N(T)``).

    Raises:
        IndexTooLargeError: If ``t_index(T) > 1``
    """
    if not t.is_square:
        raise DimensionMismatchError("group_inverse", "frontal slices must be square", shape=list(t.shape))
    index = t_index(t, tol, threads)
    if index > 1:
        raise IndexTooLargeError(index)
    result = _core_inverse(t, 1, tol, threads)
    logger.info("outer_inverse.computed", prescription="group", index=index)
    return replace(result, prescription=Prescription(PrescriptionKind.GROUP), extras={"index": index})
