"""Tabular output for benchmark records."""

import json
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
import structlog

from app.bench.harness import BenchRecord
from app.verification.metrics import RESIDUAL_NAMES

logger = structlog.get_logger(__name__)

CSV_COLUMNS = [
    "family", "op", "size_tensor", "size_matrix", "trials", "seed", "status",
    "mt_t", "mt_m", "residual", "error_t", "error_m",
]


def records_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """One row per (record, residual); failed records keep a single row with empty residuals."""
    rows = []
    for record in records:
        base = {
            "family": record.problem.family.value,
            "op": record.op.value,
            "size_tensor": record.size_tensor,
            "size_matrix": record.size_matrix,
            "trials": record.trials,
            "seed": record.seed,
            "status": record.status,
            "mt_t": record.mt_tensor,
            "mt_m": record.mt_matrix,
        }
        if record.report_tensor is None or record.report_matrix is None:
            rows.append({**base, "residual": None, "error_t": None, "error_m": None})
            continue
        tensor_values = record.report_tensor.values()
        matrix_values = record.report_matrix.values()
        for name in RESIDUAL_NAMES:
            if name not in tensor_values:
                continue
            rows.append({
                **base,
                "residual": name.upper(),
                "error_t": tensor_values[name],
                "error_m": matrix_values.get(name),
            })
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_csv(records: Sequence[BenchRecord], path: str | Path) -> Path:
    path = Path(path)
    frame = records_frame(records)
    frame.to_csv(path, index=False, float_format="%.6e")
    logger.info("bench.csv_written", path=str(path), rows=len(frame))
    return path


def write_json(records: Sequence[BenchRecord], path: str | Path) -> Path:
    """Full records, including inputs digests and failure messages."""
    path = Path(path)
    payload = [record.model_dump(mode="json") for record in records]
    path.write_text(json.dumps(payload, indent=2))
    logger.info("bench.json_written", path=str(path), records=len(payload))
    return path


def speedup_summary(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """Matrix-path time over tensor-path time per configuration."""
    frame = pd.DataFrame(
        [
            {
                "family": r.problem.family.value,
                "op": r.op.value,
                "size_tensor": r.size_tensor,
                "mt_t": r.mt_tensor,
                "mt_m": r.mt_matrix,
            }
            for r in records
            if not r.failed
        ],
        columns=["family", "op", "size_tensor", "mt_t", "mt_m"],
    )
    frame["speedup"] = frame["mt_m"] / frame["mt_t"]
    return frame
