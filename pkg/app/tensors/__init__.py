"""Third-order tensors under the t-product."""

from app.tensors.algebra import (
    cond,
    fro_norm,
    slice_ranks,
    spec_norm,
    t_index,
    t_inverse,
    t_power,
    t_rank,
    t_transpose,
    tprod,
    tprod_bcirc,
    tprod_chain,
)
from app.tensors.fourier import (
    FourierStack,
    RankTolerance,
    diagonalization_defect,
    from_fourier,
    to_fourier,
)
from app.tensors.structure import BlockMatrix, bcirc, bcirc_inv, fold, tensor_block_diag, unfold
from app.tensors.tensor import ScalarKind, Tensor3, identity_tensor

__all__ = [
    "BlockMatrix",
    "FourierStack",
    "RankTolerance",
    "ScalarKind",
    "Tensor3",
    "bcirc",
    "bcirc_inv",
    "cond",
    "diagonalization_defect",
    "fold",
    "fro_norm",
    "from_fourier",
    "identity_tensor",
    "slice_ranks",
    "spec_norm",
    "t_index",
    "t_inverse",
    "t_power",
    "t_rank",
    "t_transpose",
    "tensor_block_diag",
    "to_fourier",
    "tprod",
    "tprod_bcirc",
    "tprod_chain",
    "unfold",
]
