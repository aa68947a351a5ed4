"""Matrix-level counterparts of the outer inverses.

These act on block-circulant images (or any dense matrices) and serve as the
flattened path of the benchmarks and as oracles in tests.
"""

import numpy as np
import scipy.linalg

from app.linalg.kernels import EPS, drazin_slice, lu_solve, pinv, power_index
from app.linalg.qr import DEFAULT_OVERSAMPLE, qrcp, rand_qrcp


def _relative(a: np.ndarray, rtol: float | None) -> float:
    return max(a.shape) * EPS if rtol is None else rtol


def _cutoff(a: np.ndarray, rtol: float | None) -> tuple[float, float]:
    sv = scipy.linalg.svd(a, compute_uv=False)
    sigma = float(sv.max()) if sv.size else 0.0
    return _relative(a, rtol) * sigma, sigma


def matrix_rank(a: np.ndarray, rtol: float | None = None) -> int:
    sv = scipy.linalg.svd(a, compute_uv=False)
    sigma = float(sv.max()) if sv.size else 0.0
    return int(np.count_nonzero(sv > _relative(a, rtol) * sigma))


def matrix_pinv(a: np.ndarray, rtol: float | None = None) -> np.ndarray:
    return pinv(a, rtol=rtol)


def matrix_index(a: np.ndarray, rtol: float | None = None) -> int:
    """Index of a square matrix by rank stagnation of its powers."""
    _, sigma = _cutoff(a, rtol)
    return power_index(a, sigma, _relative(a, rtol))


def flat_outer_range(s: np.ndarray, t: np.ndarray, rtol: float | None = None) -> np.ndarray:
    """``T (S T)^†``."""
    return t @ matrix_pinv(s @ t, rtol)


def flat_outer_null(s: np.ndarray, t: np.ndarray, rtol: float | None = None) -> np.ndarray:
    """``(T S)^† T``."""
    return matrix_pinv(t @ s, rtol) @ t


def flat_outer_range_null(
    t: np.ndarray, b: np.ndarray, c: np.ndarray, rtol: float | None = None
) -> np.ndarray:
    """``B (C T B)^† C``."""
    return b @ matrix_pinv(c @ t @ b, rtol) @ c


def flat_moore_penrose(s: np.ndarray, rtol: float | None = None) -> np.ndarray:
    return matrix_pinv(s, rtol)


def flat_drazin(a: np.ndarray, rtol: float | None = None, power: int | None = None) -> np.ndarray:
    """Drazin inverse with range ``R(A^k)`` and null space ``N(A^k)``, ranks judged as in ``matrix_index``."""
    _, sigma = _cutoff(a, rtol)
    k = matrix_index(a, rtol) if power is None else power
    return drazin_slice(a, k, sigma, _relative(a, rtol))[0]


def flat_group(a: np.ndarray, rtol: float | None = None) -> np.ndarray:
    return flat_drazin(a, rtol, power=1)


def flat_outer_qr(
    s: np.ndarray,
    t: np.ndarray,
    rtol: float | None = None,
    randomized: bool = False,
    oversample: int = DEFAULT_OVERSAMPLE,
    seed: int | None = None,
) -> np.ndarray:
    """``Q̃ (Q̃^H T S Q̃)^-1 Q̃^H T`` from a pivoted QR of T."""
    cutoff, _ = _cutoff(t, rtol)
    if randomized:
        factors = rand_qrcp(t, matrix_rank(t, rtol), oversample, seed)
    else:
        factors = qrcp(t, cutoff)
    qt = factors.q_tilde
    projected = qt.conj().T @ t
    return qt @ lu_solve(projected @ s @ qt, projected)
