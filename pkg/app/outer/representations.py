"""Parametrized families of outer inverses with a prescribed range or null space."""

from app.core.exceptions import DimensionMismatchError
from app.outer.direct import fourier_one_inverse
from app.outer.existence import (
    NULL_CONDITION,
    RANGE_CONDITION,
    check_conformable,
    null_ranks,
    range_ranks,
    require,
)
from app.tensors.fourier import FourierStack, RankTolerance, TolLike, from_fourier, to_fourier
from app.tensors.tensor import ScalarKind, Tensor3


def _joint_kind(*stacks: FourierStack) -> ScalarKind:
    if all(st.is_real_origin for st in stacks):
        return ScalarKind.REAL
    return ScalarKind.COMPLEX


def _check_parameter(op: str, z: Tensor3, expected: tuple[int, int, int]) -> None:
    if z.shape != expected:
        raise DimensionMismatchError(
            op, f"parameter must be {expected[0]}x{expected[1]}x{expected[2]}",
            expected=list(expected), actual=list(z.shape),
        )


def representation_range(
    s: Tensor3, t: Tensor3, z: Tensor3, tol: TolLike = None, threads: int | None = None
) -> Tensor3:
    """Member of ``S{2}`` with range ``R(T)`` selected by an arbitrary Z.

    ``X = T*Y + T*Z - T*Z*S*T*Y`` with ``Y = (S*T)^(1)``. ``Z = 0`` gives the
    same tensor as :func:`outer_range`.

    Args:
        s: p×q×n tensor
        t: q×k×n tensor
        z: k×p×n free parameter

    Raises:
        ExistenceFailedError: If ``rank_t(S*T) != rank_t(T)``
    """
    check_conformable("representation_range", s, t)
    _check_parameter("representation_range", z, (t.q, s.p, s.n))
    policy = RankTolerance.resolve(tol)
    fs, ft, fz = to_fourier(s, threads), to_fourier(t, threads), to_fourier(z, threads)
    product = fs.matmul(ft)
    require(RANGE_CONDITION, range_ranks(product, ft, policy))

    fy = fourier_one_inverse(product, policy, threads)
    tz = ft.matmul(fz)
    x = ft.matmul(fy).slices + tz.slices - tz.matmul(product).matmul(fy).slices
    return from_fourier(FourierStack(x, _joint_kind(fy, fz)), threads=threads)


def representation_null(
    s: Tensor3, t: Tensor3, z: Tensor3, tol: TolLike = None, threads: int | None = None
) -> Tensor3:
    """Member of ``S{2}`` with null space ``N(T)`` selected by an arbitrary Z.

    ``X = Y*T + Z*T - Y*T*S*Z*T`` with ``Y = (T*S)^(1)``.

    Args:
        s: p×q×n tensor
        t: k×p×n tensor
        z: q×k×n free parameter

    Raises:
        ExistenceFailedError: If ``rank_t(T*S) != rank_t(T)``
    """
    check_conformable("representation_null", t, s)
    _check_parameter("representation_null", z, (s.q, t.p, s.n))
    policy = RankTolerance.resolve(tol)
    fs, ft, fz = to_fourier(s, threads), to_fourier(t, threads), to_fourier(z, threads)
    product = ft.matmul(fs)
    require(NULL_CONDITION, null_ranks(product, ft, policy))

    fy = fourier_one_inverse(product, policy, threads)
    zt = fz.matmul(ft)
    x = fy.matmul(ft).slices + zt.slices - fy.matmul(product).matmul(zt).slices
    return from_fourier(FourierStack(x, _joint_kind(fy, fz)), threads=threads)
