"""Custom exceptions and the command-line error handler."""

import json
import sys
from typing import Any, TextIO

import structlog

logger = structlog.get_logger(__name__)

# Process exit codes
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_EXISTENCE = 3
EXIT_NUMERICAL = 4


class TensorError(Exception):
    """Base toolkit exception."""

    def __init__(
        self,
        message: str,
        exit_code: int = EXIT_UNEXPECTED,
        details: dict[str, Any] | None = None,
    ):
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(message)


class DimensionMismatchError(TensorError):
    """Operand shapes are not conformable."""

    def __init__(self, operation: str, message: str, **details: Any):
        super().__init__(f"{operation}: {message}", exit_code=EXIT_USAGE, details=details)


class InvalidParameterError(TensorError):
    """A parameter is outside its admissible range."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message, exit_code=EXIT_USAGE, details=details)


class InvalidRankError(InvalidParameterError):
    """Requested factorization rank is out of range."""

    def __init__(self, rank: int, upper: int):
        super().__init__(f"target rank {rank} outside [1, {upper}]", rank=rank, upper=upper)


class NotBlockCirculantError(TensorError):
    """A matrix handed to bcirc_inv in strict mode is not block circulant."""

    def __init__(self, deviation: float, tolerance: float):
        super().__init__(
            f"matrix deviates from block-circulant structure by {deviation:.3e}",
            exit_code=EXIT_USAGE,
            details={"deviation": deviation, "tolerance": tolerance},
        )


class ExistenceFailedError(TensorError):
    """The rank condition guaranteeing the requested outer inverse does not hold."""

    def __init__(self, condition: str, ranks: dict[str, int]):
        pairs = ", ".join(f"{name}={value}" for name, value in ranks.items())
        super().__init__(
            f"outer inverse does not exist ({condition}): {pairs}",
            exit_code=EXIT_EXISTENCE,
            details={"condition": condition, "ranks": ranks},
        )
        self.condition = condition
        self.ranks = ranks


class SingularError(TensorError):
    """Some Fourier slice is numerically singular."""

    def __init__(self, message: str, slice_ranks: list[int] | None = None, expected: int | None = None):
        details: dict[str, Any] = {}
        if slice_ranks is not None:
            details["slice_ranks"] = slice_ranks
        if expected is not None:
            details["expected"] = expected
        super().__init__(message, exit_code=EXIT_NUMERICAL, details=details)


class NonUniformRankError(TensorError):
    """Fourier slices do not share one numerical rank."""

    def __init__(self, slice_ranks: list[int]):
        super().__init__(
            f"Fourier slice ranks are not uniform: {slice_ranks}",
            exit_code=EXIT_NUMERICAL,
            details={"slice_ranks": slice_ranks},
        )
        self.slice_ranks = slice_ranks


class IndexTooLargeError(TensorError):
    """Group inverse requested for a tensor of index greater than one."""

    def __init__(self, index: int):
        super().__init__(
            f"group inverse needs t-index <= 1, got {index}",
            exit_code=EXIT_NUMERICAL,
            details={"index": index},
        )


class RealnessViolatedError(TensorError):
    """Inverse transform of a real-origin stack left a large imaginary part."""

    def __init__(self, residue: float, tolerance: float):
        super().__init__(
            f"imaginary residue {residue:.3e} exceeds cleanup tolerance {tolerance:.3e}",
            exit_code=EXIT_NUMERICAL,
            details={"residue": residue, "tolerance": tolerance},
        )


class TensorFileError(TensorError):
    """A .t3 file could not be parsed."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}", exit_code=EXIT_USAGE, details={"path": path})


def handle_cli_error(exc: BaseException, stream: TextIO | None = None) -> int:
    """Report an exception on stderr and return the process exit code."""
    stream = stream or sys.stderr
    if isinstance(exc, TensorError):
        print(f"error: {exc.message}", file=stream)
        if exc.details:
            print(json.dumps(exc.details, sort_keys=True, default=str), file=stream)
        logger.info("command.failed", error=type(exc).__name__, exit_code=exc.exit_code)
        return exc.exit_code

    logger.exception("command.crashed", error=str(exc))
    print(f"error: unexpected failure: {exc}", file=stream)
    return EXIT_UNEXPECTED
