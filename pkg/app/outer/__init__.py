"""Outer generalized inverses with prescribed range and null space."""

from app.outer.direct import outer_full_rank, outer_null, outer_range, outer_range_null
from app.outer.engine import InverseEngine, InverseKind
from app.outer.existence import exists_null, exists_range, exists_range_null
from app.outer.representations import representation_null, representation_range
from app.outer.results import Method, OuterResult, Prescription, PrescriptionKind, TqrPartition
from app.outer.special import drazin, group_inverse, moore_penrose, one_inverse_tensor
from app.outer.tqr import QrFormula, outer_qr, rand_t_qrcp, t_qrcp

__all__ = [
    "InverseEngine",
    "InverseKind",
    "Method",
    "OuterResult",
    "Prescription",
    "PrescriptionKind",
    "QrFormula",
    "TqrPartition",
    "drazin",
    "exists_null",
    "exists_range",
    "exists_range_null",
    "group_inverse",
    "moore_penrose",
    "one_inverse_tensor",
    "outer_full_rank",
    "outer_null",
    "outer_qr",
    "outer_range",
    "outer_range_null",
    "rand_t_qrcp",
    "representation_null",
    "representation_range",
    "t_qrcp",
]
