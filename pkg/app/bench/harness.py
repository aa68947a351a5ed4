"""Benchmark harness: tensor path versus flattened matrix path.

Each run generates a gallery tensor, computes the requested inverse slicewise
in the Fourier domain and again on the block-circulant matrix, and records
mean wall time and residuals for both.
"""

import statistics
import time
from collections.abc import Callable
from enum import Enum
from typing import Any, TypeVar

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from app.core.config import get_settings
from app.core.exceptions import EXIT_OK, InvalidParameterError, TensorError
from app.gallery.generators import GallerySpec, generate
from app.outer.direct import outer_null, outer_range, outer_range_null
from app.outer.flattened import (
    flat_drazin,
    flat_group,
    flat_moore_penrose,
    flat_outer_null,
    flat_outer_qr,
    flat_outer_range,
    flat_outer_range_null,
)
from app.outer.results import Method
from app.outer.special import drazin, group_inverse, moore_penrose
from app.outer.tqr import outer_qr
from app.tensors.algebra import t_index, t_transpose
from app.tensors.fourier import RankTolerance, TolLike
from app.tensors.structure import bcirc
from app.tensors.tensor import Tensor3
from app.verification.metrics import ErrorReport, matrix_residuals, residuals

logger = structlog.get_logger(__name__)

R = TypeVar("R")


class BenchOp(str, Enum):
    MP = "mp"
    DRAZIN = "drazin"
    GROUP = "group"
    OUTER_RANGE = "outer-range"
    OUTER_NULL = "outer-null"
    OUTER_BC = "outer-bc"
    QR = "qr"
    RQR = "rqr"


class BenchRecord(BaseModel):
    """Outcome of one benchmark configuration.

    ``mt_tensor`` and ``mt_matrix`` are mean seconds over ``trials`` timed runs
    after one warm-up run.
    """

    model_config = ConfigDict(frozen=True)

    problem: GallerySpec
    op: BenchOp
    trials: int
    seed: int
    power: int | None = None
    mt_tensor: float | None = None
    mt_matrix: float | None = None
    report_tensor: ErrorReport | None = None
    report_matrix: ErrorReport | None = None
    status: str = "ok"
    error: str | None = None
    exit_code: int = EXIT_OK

    @property
    def size_tensor(self) -> str:
        return self.problem.size_label

    @property
    def size_matrix(self) -> str:
        p = self.problem
        return f"{p.rows * p.n}x{p.cols * p.n}"

    @property
    def failed(self) -> bool:
        return self.status != "ok"


def _timed(fn: Callable[[], R], trials: int) -> tuple[float, R]:
    result = fn()  # warm-up
    samples = []
    for _ in range(trials):
        start = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - start)
    return statistics.fmean(samples), result


class BenchHarness:
    """Runs one operation on both computational paths.

    Args:
        tol: Rank tolerance for both paths
        threads: Worker threads for the tensor path
    """

    def __init__(self, tol: TolLike = None, threads: int | None = None):
        self.tol = RankTolerance.resolve(tol)
        self.threads = threads
        self.settings = get_settings()

    def run(
        self,
        spec: GallerySpec,
        op: BenchOp | str,
        trials: int | None = None,
        seed: int | None = None,
        power: int | None = None,
    ) -> BenchRecord:
        """Benchmark ``op`` on the gallery tensor of ``spec``.

        Args:
            spec: Test problem
            op: Operation name
            trials: Timed runs per path (at least the configured minimum)
            seed: Seed for the randomized QR sketches
            power: Power k for Drazin runs and the E1k residual

        Returns:
            BenchRecord; numerical failures produce a record with
            ``status="failed"`` instead of raising

        Raises:
            InvalidParameterError: If ``trials`` is below the minimum
        """
        op = BenchOp(op)
        trials = self.settings.bench_default_trials if trials is None else trials
        seed = self.settings.default_seed if seed is None else seed
        if trials < self.settings.bench_min_trials:
            raise InvalidParameterError(
                f"trials must be at least {self.settings.bench_min_trials}", trials=trials
            )

        s = generate(spec)
        base = {"problem": spec, "op": op, "trials": trials, "seed": seed}
        try:
            k = self._power(op, s, power)
            tensor_fn, matrix_fn = self._paths(op, s, k, seed)
            bs = bcirc(s).entries
            mt_tensor, x = _timed(tensor_fn, trials)
            mt_matrix, xm = _timed(matrix_fn, trials)
            report_tensor = residuals(s, x, k)
            report_matrix = matrix_residuals(bs, xm, k)
        except TensorError as exc:
            logger.warning("bench.failed", op=op.value, size=spec.size_label, error=exc.message)
            return BenchRecord(
                **base, power=power, status="failed", error=exc.message, exit_code=exc.exit_code
            )

        logger.info(
            "bench.completed", op=op.value, size=spec.size_label,
            mt_tensor=mt_tensor, mt_matrix=mt_matrix,
        )
        return BenchRecord(
            **base,
            power=k,
            mt_tensor=mt_tensor,
            mt_matrix=mt_matrix,
            report_tensor=report_tensor,
            report_matrix=report_matrix,
        )

    def _power(self, op: BenchOp, s: Tensor3, power: int | None) -> int | None:
        """k for E1k: the group inverse uses 1, Drazin the requested power or the index."""
        if op is BenchOp.GROUP:
            return 1
        if op is BenchOp.DRAZIN:
            k = t_index(s, self.tol, self.threads) if power is None else power
            return max(k, 1)
        return None

    def _paths(
        self, op: BenchOp, s: Tensor3, k: int | None, seed: int
    ) -> tuple[Callable[[], Tensor3], Callable[[], np.ndarray]]:
        tol, threads, rtol = self.tol, self.threads, self.tol.rtol
        st = t_transpose(s)
        bs = bcirc(s).entries
        bst = bs.conj().T

        tensor_paths: dict[BenchOp, Callable[[], Any]] = {
            BenchOp.MP: lambda: moore_penrose(s, tol, threads),
            BenchOp.GROUP: lambda: group_inverse(s, tol, threads),
            BenchOp.DRAZIN: lambda: drazin(s, tol, threads, power=k),
            BenchOp.OUTER_RANGE: lambda: outer_range(s, st, tol, threads),
            BenchOp.OUTER_NULL: lambda: outer_null(s, st, tol, threads),
            BenchOp.OUTER_BC: lambda: outer_range_null(s, st, st, tol, threads),
            BenchOp.QR: lambda: outer_qr(s, st, Method.QR, tol=tol, threads=threads),
            BenchOp.RQR: lambda: outer_qr(s, st, Method.RAND_QR, seed=seed, tol=tol, threads=threads),
        }
        matrix_paths: dict[BenchOp, Callable[[], np.ndarray]] = {
            BenchOp.MP: lambda: flat_moore_penrose(bs, rtol),
            BenchOp.GROUP: lambda: flat_group(bs, rtol),
            BenchOp.DRAZIN: lambda: flat_drazin(bs, rtol, power=k),
            BenchOp.OUTER_RANGE: lambda: flat_outer_range(bs, bst, rtol),
            BenchOp.OUTER_NULL: lambda: flat_outer_null(bs, bst, rtol),
            BenchOp.OUTER_BC: lambda: flat_outer_range_null(bs, bst, bst, rtol),
            BenchOp.QR: lambda: flat_outer_qr(bs, bst, rtol),
            BenchOp.RQR: lambda: flat_outer_qr(bs, bst, rtol, randomized=True, seed=seed),
        }
        tensor_fn = tensor_paths[op]
        return (lambda: tensor_fn().inverse), matrix_paths[op]


def run_bench(
    spec: GallerySpec,
    op: BenchOp | str,
    trials: int | None = None,
    seed: int | None = None,
    tol: TolLike = None,
    threads: int | None = None,
    power: int | None = None,
) -> BenchRecord:
    """Convenience wrapper around :class:`BenchHarness`."""
    return BenchHarness(tol, threads).run(spec, op, trials, seed, power)
