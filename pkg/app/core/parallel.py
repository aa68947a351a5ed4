"""Parallel map over independent Fourier slices."""

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from app.core.config import get_settings

T = TypeVar("T")
R = TypeVar("R")


def slice_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """Apply ``fn`` to every item, in a thread pool when ``threads > 1``.

    LAPACK releases the GIL, so threads give real speedups for per-slice
    factorizations. Results keep the order of ``items``.
    """
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def resolve_threads(threads: int | None) -> int:
    """Explicit thread count, or the configured default when ``None``."""
    if threads is None:
        return get_settings().threads
    return max(1, int(threads))
