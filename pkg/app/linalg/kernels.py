"""Dense matrix kernels applied to one Fourier slice at a time."""

import warnings

import numpy as np
import scipy.linalg

from app.core.exceptions import DimensionMismatchError, SingularError

EPS = float(np.finfo(float).eps)


def default_cutoff(singular_values: np.ndarray, shape: tuple[int, ...]) -> float:
    """``max(shape) * eps * sigma_max``, the usual matrix-rank threshold."""
    if singular_values.size == 0:
        return 0.0
    return max(shape) * EPS * float(singular_values.max())


def svd_rank(a: np.ndarray, cutoff: float | None = None) -> int:
    """Number of singular values strictly above ``cutoff``."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    sv = scipy.linalg.svd(a, compute_uv=False)
    tau = default_cutoff(sv, a.shape) if cutoff is None else cutoff
    return int(np.count_nonzero(sv > tau))


def pinv(a: np.ndarray, cutoff: float | None = None, rtol: float | None = None) -> np.ndarray:
    """Moore-Penrose inverse via the SVD, truncated at ``cutoff``.

    Args:
        a: m×n matrix
        cutoff: Absolute singular value threshold
        rtol: Threshold relative to ``sigma_max`` when no cutoff is given;
            defaults to ``max(m, n) * eps``

    Returns:
        n×m matrix
    """
    a = np.asarray(a)
    m, n = a.shape
    if a.size == 0:
        return np.zeros((n, m), dtype=a.dtype)
    u, s, vh = scipy.linalg.svd(a, full_matrices=False)
    if cutoff is not None:
        tau = cutoff
    elif rtol is not None:
        tau = rtol * float(s.max())
    else:
        tau = default_cutoff(s, a.shape)
    r = int(np.count_nonzero(s > tau))
    if r == 0:
        return np.zeros((n, m), dtype=np.result_type(a.dtype, np.float64))
    return (vh[:r].conj().T / s[:r]) @ u[:, :r].conj().T


def one_inverse(a: np.ndarray, cutoff: float | None = None) -> np.ndarray:
    """A {1}-inverse ``G`` with ``A G A = A``; the Moore-Penrose inverse is used."""
    return pinv(a, cutoff)


def _lu(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("lu", "square matrix required", shape=list(a.shape))
    m = a.shape[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a)
    pivots = np.abs(np.diagonal(lu))
    if pivots.min() <= m * EPS * max(float(pivots.max()), EPS):
        raise SingularError(
            f"matrix is numerically singular (smallest LU pivot {pivots.min():.3e})"
        )
    return lu, piv


def lu_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A X = B`` through a partially pivoted LU factorization.

    Raises:
        SingularError: If an LU pivot is negligible
    """
    a = np.asarray(a)
    if a.shape[0] == 0:
        return np.zeros((0,) + np.asarray(b).shape[1:], dtype=np.result_type(a, b))
    return scipy.linalg.lu_solve(_lu(a), b)


def lu_inverse(a: np.ndarray) -> np.ndarray:
    """Inverse of a square matrix via LU."""
    a = np.asarray(a)
    return lu_solve(a, np.eye(a.shape[0], dtype=np.result_type(a.dtype, np.float64)))


def power_index(a: np.ndarray, scale: float, rtol: float) -> int:
    """Index of a square matrix by rank stagnation of its powers.

    The rank of ``A^j`` is taken against ``rtol * scale**j`` so that powers of a
    slice are judged on the same footing as the slice itself. The result is
    capped at the matrix order.

    Args:
        a: Square matrix
        scale: Reference norm, normally the largest singular value in play
        rtol: Relative rank tolerance

    Returns:
        Smallest k with ``rank(A^k) == rank(A^(k+1))``
    """
    a = np.asarray(a)
    m = a.shape[0]
    previous = m
    power = np.eye(m, dtype=a.dtype)
    for j in range(1, m + 2):
        power = power @ a
        current = svd_rank(power, rtol * scale**j)
        if current == previous:
            return j - 1
        previous = current
    return m


def drazin_slice(a: np.ndarray, k: int, scale: float, rtol: float) -> tuple[np.ndarray, int]:
    """Drazin-type inverse of a square matrix for a power ``k`` at or above its index.

    With ``A^k = U S W^H`` truncated at ``rtol * scale**k`` (the cutoff
    ``power_index`` uses), the result is ``U (W^H A U)^-1 W^H``: the outer
    inverse with range ``R(A^k)`` and null space ``N(A^k)``. ``k = 0`` gives
    the ordinary inverse.

    Returns:
        The inverse and the numerical rank of ``A^k``

    Raises:
        SingularError: If ``W^H A U`` is singular, i.e. ``k`` is below the index
    """
    a = np.asarray(a)
    m = a.shape[0]
    power = np.eye(m, dtype=a.dtype)
    for _ in range(k):
        power = power @ a
    u, s, vh = scipy.linalg.svd(power, full_matrices=False)
    r = int(np.count_nonzero(s > rtol * scale**k))
    if r == 0:
        return np.zeros_like(a, dtype=np.result_type(a.dtype, np.float64)), 0
    basis, rows = u[:, :r], vh[:r]
    core = rows @ a @ basis
    return basis @ lu_solve(core, rows), r
