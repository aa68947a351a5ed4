"""Rank conditions under which outer inverses with prescribed range/null space exist."""

from app.core.exceptions import DimensionMismatchError, ExistenceFailedError
from app.tensors.fourier import FourierStack, RankTolerance, TolLike, to_fourier
from app.tensors.tensor import Tensor3

RANGE_CONDITION = "rank_t(S*T) = rank_t(T)"
NULL_CONDITION = "rank_t(T*S) = rank_t(T)"
RANGE_NULL_CONDITION = "rank_t(C*T*B) = rank_t(B) = rank_t(C)"


def check_conformable(op: str, left: Tensor3, right: Tensor3) -> None:
    """Require that ``left * right`` is defined."""
    if left.q != right.p or left.n != right.n:
        raise DimensionMismatchError(
            op, f"{left.p}x{left.q}x{left.n} and {right.p}x{right.q}x{right.n} are not conformable",
            left=list(left.shape), right=list(right.shape),
        )


def stack_rank(stack: FourierStack, policy: RankTolerance) -> int:
    return sum(policy.slice_ranks(stack))


def range_ranks(fz: FourierStack, ft: FourierStack, policy: RankTolerance) -> dict[str, int]:
    return {"rank_t(S*T)": stack_rank(fz, policy), "rank_t(T)": stack_rank(ft, policy)}


def null_ranks(fz: FourierStack, ft: FourierStack, policy: RankTolerance) -> dict[str, int]:
    return {"rank_t(T*S)": stack_rank(fz, policy), "rank_t(T)": stack_rank(ft, policy)}


def range_null_ranks(
    fz: FourierStack, fb: FourierStack, fc: FourierStack, policy: RankTolerance
) -> dict[str, int]:
    return {
        "rank_t(C*T*B)": stack_rank(fz, policy),
        "rank_t(B)": stack_rank(fb, policy),
        "rank_t(C)": stack_rank(fc, policy),
    }


def all_equal(ranks: dict[str, int]) -> bool:
    return len(set(ranks.values())) == 1


def require(condition: str, ranks: dict[str, int]) -> None:
    """Raise ExistenceFailedError unless every recorded rank agrees."""
    if not all_equal(ranks):
        raise ExistenceFailedError(condition, ranks)


def exists_range(s: Tensor3, t: Tensor3, tol: TolLike = None) -> bool:
    """Whether ``S^(2)`` with range ``R(T)`` exists: ``rank_t(S*T) = rank_t(T)``.

    Args:
        s: p×q×n tensor
        t: q×k×n tensor
    """
    check_conformable("exists_range", s, t)
    fs, ft = to_fourier(s), to_fourier(t)
    return all_equal(range_ranks(fs.matmul(ft), ft, RankTolerance.resolve(tol)))


def exists_null(s: Tensor3, t: Tensor3, tol: TolLike = None) -> bool:
    """Whether ``S^(2)`` with null space ``N(T)`` exists: ``rank_t(T*S) = rank_t(T)``.

    Args:
        s: p×q×n tensor
        t: k×p×n tensor
    """
    check_conformable("exists_null", t, s)
    fs, ft = to_fourier(s), to_fourier(t)
    return all_equal(null_ranks(ft.matmul(fs), ft, RankTolerance.resolve(tol)))


def exists_range_null(t: Tensor3, b: Tensor3, c: Tensor3, tol: TolLike = None) -> bool:
    """Whether ``T^(2)`` with range ``R(B)`` and null space ``N(C)`` exists."""
    check_conformable("exists_range_null", t, b)
    check_conformable("exists_range_null", c, t)
    fb, fc = to_fourier(b), to_fourier(c)
    fz = fc.matmul(to_fourier(t)).matmul(fb)
    ranks = range_null_ranks(fz, fb, fc, RankTolerance.resolve(tol))
    return all_equal(ranks)
