"""Timing and accuracy comparison of the tensor and flattened paths."""

from app.bench.harness import BenchHarness, BenchOp, BenchRecord, run_bench
from app.bench.reporting import records_frame, speedup_summary, write_csv, write_json

__all__ = [
    "BenchHarness",
    "BenchOp",
    "BenchRecord",
    "records_frame",
    "run_bench",
    "speedup_summary",
    "write_csv",
    "write_json",
]
