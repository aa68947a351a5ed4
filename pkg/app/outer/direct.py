"""Outer inverses with prescribed range and/or null space, computed slicewise.

Every routine works on Fourier stacks: products become per-slice matrix
products and the {1}-inverse of a product is taken per slice with the
stack-wide rank cutoff.
"""

import structlog

from app.core.exceptions import ExistenceFailedError
from app.linalg.kernels import lu_inverse, one_inverse
from app.outer.existence import (
    NULL_CONDITION,
    RANGE_CONDITION,
    RANGE_NULL_CONDITION,
    check_conformable,
    null_ranks,
    range_null_ranks,
    range_ranks,
    require,
    stack_rank,
)
from app.outer.results import Method, OuterResult, Prescription, PrescriptionKind
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


def fourier_one_inverse(
    stack: FourierStack, policy: RankTolerance, threads: int | None = None
) -> FourierStack:
    """Slicewise {1}-inverse (Moore-Penrose) with the stack-wide cutoff."""
    cutoff = policy.cutoff(stack)
    mats = map_slices(lambda _k, d: one_inverse(d, cutoff), stack, threads)
    return FourierStack.from_matrices(mats, stack.origin_kind)


def _relative(policy: RankTolerance, stack: FourierStack) -> float:
    return policy.relative(stack.p, stack.q, stack.n)


def outer_range(
    s: Tensor3, t: Tensor3, tol: TolLike = None, threads: int | None = None
) -> OuterResult:
    """``S^(2)`` with range ``R(T)``: ``X = T * (S*T)^(1)``.

    Args:
        s: p×q×n tensor
        t: q×k×n tensor fixing the range
        tol: Rank tolerance
        threads: Worker threads for slice loops

    Returns:
        OuterResult with ``range_witness`` W such that ``X = T * W``

    Raises:
        ExistenceFailedError: If ``rank_t(S*T) != rank_t(T)``
    """
    check_conformable("outer_range", s, t)
    policy = RankTolerance.resolve(tol)
    ft = to_fourier(t, threads)
    fz = to_fourier(s, threads).matmul(ft)
    ranks = range_ranks(fz, ft, policy)
    require(RANGE_CONDITION, ranks)

    fy = fourier_one_inverse(fz, policy, threads)
    x = from_fourier(ft.matmul(fy), threads=threads)
    logger.info("outer_inverse.computed", prescription="range", ranks=ranks)
    return OuterResult(
        inverse=x,
        prescription=Prescription(PrescriptionKind.RANGE_ONLY),
        ranks_checked=tuple(ranks.items()),
        tolerance_used=_relative(policy, fz),
        range_witness=from_fourier(fy, threads=threads),
    )


def outer_null(
    s: Tensor3, t: Tensor3, tol: TolLike = None, threads: int | None = None
) -> OuterResult:
    """``S^(2)`` with null space ``N(T)``: ``X = (T*S)^(1) * T``.

    Args:
        s: p×q×n tensor
        t: k×p×n tensor fixing the null space

    Raises:
        ExistenceFailedError: If ``rank_t(T*S) != rank_t(T)``
    """
    check_conformable("outer_null", t, s)
    policy = RankTolerance.resolve(tol)
    ft = to_fourier(t, threads)
    fz = ft.matmul(to_fourier(s, threads))
    ranks = null_ranks(fz, ft, policy)
    require(NULL_CONDITION, ranks)

    fy = fourier_one_inverse(fz, policy, threads)
    x = from_fourier(fy.matmul(ft), threads=threads)
    logger.info("outer_inverse.computed", prescription="null", ranks=ranks)
    return OuterResult(
        inverse=x,
        prescription=Prescription(PrescriptionKind.NULL_ONLY),
        ranks_checked=tuple(ranks.items()),
        tolerance_used=_relative(policy, fz),
        null_witness=from_fourier(fy, threads=threads),
    )


def outer_range_null(
    t: Tensor3, b: Tensor3, c: Tensor3, tol: TolLike = None, threads: int | None = None
) -> OuterResult:
    """``T^(2)`` with range ``R(B)`` and null space ``N(C)``.

    ``X = B * (C*T*B)^(1) * C``.

    Args:
        t: p×q×n tensor
        b: q×k×n tensor fixing the range
        c: s×p×n tensor fixing the null space

    Raises:
        ExistenceFailedError: Unless ``rank_t(C*T*B) = rank_t(B) = rank_t(C)``
    """
    check_conformable("outer_range_null", t, b)
    check_conformable("outer_range_null", c, t)
    policy = RankTolerance.resolve(tol)
    fb, fc = to_fourier(b, threads), to_fourier(c, threads)
    fz = fc.matmul(to_fourier(t, threads)).matmul(fb)
    ranks = range_null_ranks(fz, fb, fc, policy)
    require(RANGE_NULL_CONDITION, ranks)

    fy = fourier_one_inverse(fz, policy, threads)
    right = fy.matmul(fc)
    x = from_fourier(fb.matmul(right), threads=threads)
    logger.info("outer_inverse.computed", prescription="range-null", ranks=ranks)
    return OuterResult(
        inverse=x,
        prescription=Prescription(PrescriptionKind.RANGE_NULL),
        ranks_checked=tuple(ranks.items()),
        tolerance_used=_relative(policy, fz),
        range_witness=from_fourier(right, threads=threads),
        null_witness=from_fourier(fb.matmul(fy), threads=threads),
    )


def outer_full_rank(
    t: Tensor3, b: Tensor3, c: Tensor3, tol: TolLike = None, threads: int | None = None
) -> OuterResult:
    """Outer inverse from a full-rank pair: ``X = B * (C*T*B)^-1 * C``.

    Applies when ``C*T*B`` is square with invertible Fourier slices, as for
    the factors of a full-rank decomposition.

    Raises:
        ExistenceFailedError: If ``C*T*B`` is not invertible
    """
    check_conformable("outer_full_rank", t, b)
    check_conformable("outer_full_rank", c, t)
    policy = RankTolerance.resolve(tol)
    fb, fc = to_fourier(b, threads), to_fourier(c, threads)
    fz = fc.matmul(to_fourier(t, threads)).matmul(fb)
    full = fz.p * fz.n
    ranks = {"rank_t(C*T*B)": stack_rank(fz, policy), "order*n": full}
    if fz.p != fz.q or ranks["rank_t(C*T*B)"] != full:
        raise ExistenceFailedError("C*T*B invertible", ranks)

    inverses = map_slices(lambda _k, d: lu_inverse(d), fz, threads)
    middle = FourierStack.from_matrices(inverses, fz.origin_kind)
    x = from_fourier(fb.matmul(middle).matmul(fc), threads=threads)
    logger.info("outer_inverse.computed", prescription="full-rank", ranks=ranks)
    return OuterResult(
        inverse=x,
        prescription=Prescription(PrescriptionKind.FULL_RANK),
        ranks_checked=tuple(ranks.items()),
        tolerance_used=_relative(policy, fz),
        method=Method.DIRECT,
    )
