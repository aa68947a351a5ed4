"""QR with column pivoting, deterministic and sketched."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import structlog

from app.core.exceptions import InvalidRankError
from app.linalg.kernels import EPS

logger = structlog.get_logger(__name__)

DEFAULT_OVERSAMPLE = 10


@dataclass(frozen=True, eq=False)
class PivotedQr:
    """Factors of ``A[:, perm] = Q R`` with the revealed rank.

    Attributes:
        q: m×m unitary factor
        r: m×n upper trapezoidal factor
        perm: Column order, so ``A[:, perm]`` is the pivoted matrix
        rank: Numerical rank revealed by the factorization
    """

    q: np.ndarray
    r: np.ndarray
    perm: np.ndarray
    rank: int

    @property
    def q_tilde(self) -> np.ndarray:
        """Leading ``rank`` columns of Q."""
        return self.q[:, : self.rank]

    @property
    def r_tilde(self) -> np.ndarray:
        """Leading ``rank`` rows of R."""
        return self.r[: self.rank, :]

    @property
    def permutation_matrix(self) -> np.ndarray:
        """P with ``A P = A[:, perm]``."""
        return np.eye(len(self.perm))[:, self.perm]

    def r_tilde_unpermuted(self) -> np.ndarray:
        """``R̃ P^H``: the rows of R̃ with columns returned to original order."""
        out = np.zeros_like(self.r_tilde)
        out[:, self.perm] = self.r_tilde
        return out

    def conj(self) -> "PivotedQr":
        """Factors of ``conj(A)``: same pivots, conjugated Q and R."""
        return PivotedQr(np.conj(self.q), np.conj(self.r), self.perm, self.rank)

    def reconstruction_residual(self, a: np.ndarray) -> float:
        return float(np.linalg.norm(np.asarray(a)[:, self.perm] - self.q @ self.r))


def qrcp(a: np.ndarray, cutoff: float | None = None) -> PivotedQr:
    """Householder QR with Businger-Golub column pivoting.

    Args:
        a: m×n matrix
        cutoff: Absolute threshold on ``|R_ii|``; defaults to
            ``max(m, n) * eps * |R_11|``

    Returns:
        PivotedQr whose rank is the number of leading diagonal entries of R
        above the cutoff
    """
    a = np.asarray(a)
    m, n = a.shape
    q, r, perm = scipy.linalg.qr(a, pivoting=True)
    diag = np.abs(np.diagonal(r))
    if cutoff is None:
        cutoff = max(m, n) * EPS * float(diag[0]) if diag.size else 0.0
    small = diag <= cutoff
    rank = int(np.argmax(small)) if small.any() else int(diag.size)
    return PivotedQr(q, r, perm, rank)


def rand_qrcp(
    a: np.ndarray,
    rank: int,
    oversample: int = DEFAULT_OVERSAMPLE,
    rng: np.random.Generator | int | None = None,
) -> PivotedQr:
    """Randomized QRCP: pivots chosen on a Gaussian sketch.

    The sketch ``Omega A`` has ``rank + oversample`` rows. Its pivoted QR gives
    the column order; ``A`` is then factored without pivoting in that order.

    Args:
        a: m×n matrix
        rank: Target rank, ``1 <= rank <= min(m, n)``
        oversample: Extra sketch rows
        rng: Generator or seed for the Gaussian test matrix

    Raises:
        InvalidRankError: If ``rank`` is out of range
    """
    a = np.asarray(a)
    m, n = a.shape
    if not 1 <= rank <= min(m, n):
        raise InvalidRankError(rank, min(m, n))
    gen = np.random.default_rng(rng)
    omega = gen.standard_normal((rank + max(oversample, 0), m))
    _, perm = scipy.linalg.qr(omega @ a, mode="r", pivoting=True)
    q, r = scipy.linalg.qr(a[:, perm])
    logger.debug("rand_qrcp.factored", shape=[m, n], rank=rank, sketch_rows=omega.shape[0])
    return PivotedQr(q, r, perm, rank)
