"""Inverse dispatcher.

Maps an inverse kind and a computational method to the routine that computes
it, so callers (the CLI, the benchmark harness) share one entry point.
"""

from collections.abc import Sequence
from dataclasses import replace
from enum import Enum

import structlog

from app.core.exceptions import IndexTooLargeError, InvalidParameterError
from app.outer.direct import outer_null, outer_range, outer_range_null
from app.outer.results import Method, OuterResult, Prescription, PrescriptionKind
from app.outer.special import drazin, group_inverse, moore_penrose
from app.outer.tqr import QrFormula, outer_qr
from app.tensors.algebra import t_index, t_power, t_transpose
from app.tensors.fourier import TolLike
from app.tensors.tensor import Tensor3

logger = structlog.get_logger(__name__)


class InverseKind(str, Enum):
    MOORE_PENROSE = "mp"
    GROUP = "group"
    DRAZIN = "drazin"
    OUTER = "outer"


class InverseEngine:
    """Computes generalized inverses of one tensor.

    Args:
        tol: Rank tolerance shared by every rank decision
        threads: Worker threads for slice loops
        oversample: Sketch oversampling for the randomized QR route
        seed: Sketch seed for the randomized QR route
        formula: Closed form used on the QR routes
    """

    def __init__(
        self,
        tol: TolLike = None,
        threads: int | None = None,
        oversample: int | None = None,
        seed: int | None = None,
        formula: QrFormula | str = QrFormula.PROJECTED,
    ):
        self.tol = tol
        self.threads = threads
        self.oversample = oversample
        self.seed = seed
        self.formula = QrFormula(formula)

    def compute(
        self,
        kind: InverseKind | str,
        s: Tensor3,
        method: Method | str = Method.DIRECT,
        range_tensor: Tensor3 | None = None,
        null_tensor: Tensor3 | None = None,
        b: Tensor3 | None = None,
        c: Tensor3 | None = None,
        power: int | None = None,
        rank: int | Sequence[int] | None = None,
    ) -> OuterResult:
        """Compute the requested inverse of ``s``.

        For ``InverseKind.OUTER`` the prescription comes from the supplied
        tensors: ``b`` and ``c`` (range and null space), or ``range_tensor``
        and/or ``null_tensor``. The QR routes need ``range_tensor`` and use it
        for both range and null space.

        Raises:
            InvalidParameterError: If the operands do not define a prescription
        """
        kind = InverseKind(kind)
        method = Method(method)
        logger.debug("engine.compute", kind=kind.value, method=method.value, shape=list(s.shape))
        if method is Method.DIRECT:
            return self._direct(kind, s, range_tensor, null_tensor, b, c, power)
        return self._qr(kind, s, method, range_tensor, power, rank)

    def _direct(
        self,
        kind: InverseKind,
        s: Tensor3,
        range_tensor: Tensor3 | None,
        null_tensor: Tensor3 | None,
        b: Tensor3 | None,
        c: Tensor3 | None,
        power: int | None,
    ) -> OuterResult:
        if kind is InverseKind.MOORE_PENROSE:
            return moore_penrose(s, self.tol, self.threads)
        if kind is InverseKind.GROUP:
            return group_inverse(s, self.tol, self.threads)
        if kind is InverseKind.DRAZIN:
            return drazin(s, self.tol, self.threads, power=power)

        if b is not None or c is not None:
            if b is None or c is None:
                raise InvalidParameterError("range-null prescription needs both B and C")
            return outer_range_null(s, b, c, self.tol, self.threads)
        if range_tensor is not None and null_tensor is not None:
            return outer_range_null(s, range_tensor, null_tensor, self.tol, self.threads)
        if range_tensor is not None:
            return outer_range(s, range_tensor, self.tol, self.threads)
        if null_tensor is not None:
            return outer_null(s, null_tensor, self.tol, self.threads)
        raise InvalidParameterError("outer inverse needs a range tensor, a null tensor, or B and C")

    def _qr(
        self,
        kind: InverseKind,
        s: Tensor3,
        method: Method,
        range_tensor: Tensor3 | None,
        power: int | None,
        rank: int | Sequence[int] | None,
    ) -> OuterResult:
        prescription: Prescription | None = None
        if kind is InverseKind.MOORE_PENROSE:
            t = t_transpose(s)
            prescription = Prescription(PrescriptionKind.MOORE_PENROSE)
        elif kind is InverseKind.GROUP:
            index = t_index(s, self.tol, self.threads)
            if index > 1:
                raise IndexTooLargeError(index)
            t = s
            prescription = Prescription(PrescriptionKind.GROUP)
        elif kind is InverseKind.DRAZIN:
            index = t_index(s, self.tol, self.threads)
            if power is not None and power < index:
                raise InvalidParameterError(
                    f"power {power} is below the index {index}", power=power, index=index
                )
            k = index if power is None else power
            t = t_power(s, k, self.threads)
            prescription = Prescription(PrescriptionKind.DRAZIN, power=k)
        else:
            if range_tensor is None:
                raise InvalidParameterError("the QR route needs the tensor T defining range and null space")
            t = range_tensor

        result = outer_qr(
            s, t, method=method, rank=rank, oversample=self.oversample, seed=self.seed,
            formula=self.formula, tol=self.tol, threads=self.threads,
        )
        if prescription is not None:
            result = replace(result, prescription=prescription)
        return result
