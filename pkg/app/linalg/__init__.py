"""Per-slice dense matrix kernels."""

from app.linalg.kernels import lu_inverse, lu_solve, one_inverse, pinv, power_index, svd_rank
from app.linalg.qr import PivotedQr, qrcp, rand_qrcp

__all__ = [
    "PivotedQr",
    "lu_inverse",
    "lu_solve",
    "one_inverse",
    "pinv",
    "power_index",
    "qrcp",
    "rand_qrcp",
    "svd_rank",
]
