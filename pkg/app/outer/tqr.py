"""t-QR factorization and the outer inverse built from it.

For a q×p×n tensor T with uniform Fourier-slice rank s, pivoted QR of every
slice gives ``T * P = Q̃ * R̃``. The outer inverse of S with range ``R(T)`` and
null space ``N(T)`` is then

    X = Q̃ * (Q̃* * T * S * Q̃)^-1 * Q̃* * T              (projected form)
      = Q̃ * (R̃ * P* * S * Q̃)^-1 * R̃ * P*              (triangular form)

with the middle inverse taken slice by slice.
"""

from collections.abc import Sequence
from enum import Enum

import numpy as np
import structlog

from app.core.config import get_settings
from app.core.exceptions import (
    DimensionMismatchError,
    ExistenceFailedError,
    InvalidParameterError,
    NonUniformRankError,
    SingularError,
)
from app.linalg.kernels import lu_solve
from app.linalg.qr import PivotedQr, qrcp, rand_qrcp
from app.outer.existence import check_conformable, stack_rank
from app.outer.results import Method, OuterResult, Prescription, PrescriptionKind, TqrPartition
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


class QrFormula(str, Enum):
    """Closed form used by :func:`outer_qr`."""

    PROJECTED = "projected"
    TRIANGULAR = "triangular"


def _require_uniform(ranks: list[int]) -> int:
    if len(set(ranks)) != 1:
        raise NonUniformRankError(ranks)
    if ranks[0] == 0:
        raise SingularError("tensor has t-rank zero, no t-QR partition exists", slice_ranks=ranks)
    return ranks[0]


def _assemble(stack: FourierStack, factors: list[PivotedQr], s: int) -> TqrPartition:
    kind = stack.origin_kind
    q_tilde = FourierStack.from_matrices([f.q_tilde for f in factors], kind)
    r_tilde = FourierStack.from_matrices([f.r_tilde for f in factors], kind)
    perm = FourierStack.from_matrices([f.permutation_matrix for f in factors], kind)
    return TqrPartition(
        q_tilde=from_fourier(q_tilde),
        r_tilde=from_fourier(r_tilde),
        permutation=from_fourier(perm),
        s=s,
        slice_factors=tuple(factors),
    )


def t_qrcp(t: Tensor3, tol: TolLike = None, threads: int | None = None) -> TqrPartition:
    """Deterministic t-QR with column pivoting.

    Pivoted QR runs on every Fourier slice; for real tensors the upper half of
    the spectrum is mirrored from the lower half so the factors stay real.

    Raises:
        NonUniformRankError: If Fourier slices reveal different ranks
    """
    stack = to_fourier(t, threads)
    cutoff = RankTolerance.resolve(tol).cutoff(stack)
    factors = map_slices(lambda _k, d: qrcp(d, cutoff), stack, threads, conjugate=PivotedQr.conj)
    s = _require_uniform([f.rank for f in factors])
    logger.debug("t_qrcp.factored", shape=list(t.shape), s=s)
    return _assemble(stack, factors, s)


def rand_t_qrcp(
    t: Tensor3,
    rank: int | Sequence[int] | None = None,
    oversample: int | None = None,
    seed: int | None = None,
    tol: TolLike = None,
    threads: int | None = None,
) -> TqrPartition:
    """Randomized t-QR: sketched pivoting on every Fourier slice.

    Args:
        t: Tensor to factor
        rank: Target rank per slice, either one value or one per slice;
            defaults to the numerical slice ranks
        oversample: Extra sketch rows (defaults to the configured value)
        seed: Seed for the Gaussian sketches (defaults to the configured value)
        tol: Rank tolerance used when ``rank`` is omitted
        threads: Worker threads

    Raises:
        NonUniformRankError: If the slice ranks differ
        InvalidRankError: If a target rank is out of range
    """
    settings = get_settings()
    oversample = settings.default_oversample if oversample is None else oversample
    seed = settings.default_seed if seed is None else seed

    stack = to_fourier(t, threads)
    if rank is None:
        targets = RankTolerance.resolve(tol).slice_ranks(stack)
    elif isinstance(rank, int):
        targets = [rank] * stack.n
    else:
        targets = list(rank)
        if len(targets) != stack.n:
            raise DimensionMismatchError(
                "rand_t_qrcp", f"expected {stack.n} per-slice ranks, got {len(targets)}"
            )
    s = _require_uniform(targets)

    children = np.random.SeedSequence(seed).spawn(stack.n)
    factors = map_slices(
        lambda k, d: rand_qrcp(d, targets[k], oversample, np.random.default_rng(children[k])),
        stack,
        threads,
        conjugate=PivotedQr.conj,
    )
    logger.debug("rand_t_qrcp.factored", shape=list(t.shape), s=s, oversample=oversample, seed=seed)
    return _assemble(stack, factors, s)


def outer_qr(
    s: Tensor3,
    t: Tensor3,
    method: Method | str = Method.QR,
    rank: int | Sequence[int] | None = None,
    oversample: int | None = None,
    seed: int | None = None,
    formula: QrFormula | str = QrFormula.PROJECTED,
    tol: TolLike = None,
    threads: int | None = None,
) -> OuterResult:
    """Outer inverse of S with range ``R(T)`` and null space ``N(T)`` via t-QR of T.

    Args:
        s: p×q×n tensor
        t: q×p×n tensor; ``t_transpose(S)`` gives the Moore-Penrose inverse and
            ``S^k`` with k the t-index gives the Drazin inverse
        method: ``Method.QR`` or ``Method.RAND_QR``
        rank, oversample, seed: Randomized factorization parameters
        formula: Closed form to evaluate
        tol: Rank tolerance
        threads: Worker threads

    Raises:
        ExistenceFailedError: If ``rank_t(T) > rank_t(S)`` or the middle
            tensor is singular
        NonUniformRankError: If T's slice ranks differ
    """
    method = Method(method)
    formula = QrFormula(formula)
    check_conformable("outer_qr", s, t)
    if t.q != s.p:
        raise DimensionMismatchError(
            "outer_qr", f"T must be {s.q}x{s.p}x{s.n}", expected=[s.q, s.p, s.n], actual=list(t.shape)
        )
    policy = RankTolerance.resolve(tol)
    fs, ft = to_fourier(s, threads), to_fourier(t, threads)
    rank_s, rank_t = stack_rank(fs, policy), stack_rank(ft, policy)
    if rank_t > rank_s:
        raise ExistenceFailedError("rank_t(T) <= rank_t(S)", {"rank_t(T)": rank_t, "rank_t(S)": rank_s})

    if method is Method.RAND_QR:
        partition = rand_t_qrcp(t, rank, oversample, seed, policy, threads)
    elif method is Method.QR:
        partition = t_qrcp(t, policy, threads)
    else:
        raise InvalidParameterError(f"method {method.value} is not a QR route", method=method.value)
    factors = partition.slice_factors
    ts = ft.matmul(fs)

    def middle_of(k: int, ts_k: np.ndarray) -> np.ndarray:
        qt = factors[k].q_tilde
        if formula is QrFormula.PROJECTED:
            return qt.conj().T @ ts_k @ qt
        return factors[k].r_tilde_unpermuted() @ fs.slice(k) @ qt

    middle = FourierStack.from_matrices(
        map_slices(middle_of, ts, threads, conjugate=np.conj), ts.origin_kind
    )
    middle_ranks = policy.slice_ranks(middle)
    ranks = {"rank_t(middle)": sum(middle_ranks), "s*n": partition.s * s.n}
    if min(middle_ranks) < partition.s:
        raise ExistenceFailedError("middle tensor invertible", ranks)

    def solve(k: int, m_k: np.ndarray) -> np.ndarray:
        qt = factors[k].q_tilde
        if formula is QrFormula.PROJECTED:
            rhs = qt.conj().T @ ft.slice(k)
        else:
            rhs = factors[k].r_tilde_unpermuted()
        return qt @ lu_solve(m_k, rhs)

    slices = map_slices(solve, middle, threads, conjugate=np.conj)
    x = from_fourier(FourierStack.from_matrices(slices, ts.origin_kind), threads=threads)
    logger.info(
        "outer_inverse.computed", prescription="qr", method=method.value,
        formula=formula.value, s=partition.s,
    )
    return OuterResult(
        inverse=x,
        prescription=Prescription(PrescriptionKind.QR_FROM),
        ranks_checked=tuple(ranks.items()),
        tolerance_used=policy.relative(ts.p, ts.q, ts.n),
        method=method,
        extras={"partition_rank": partition.s, "formula": formula.value},
    )
