#!/usr/bin/env python
"""Compare the slicewise tensor path with the flattened matrix path.

Runs the benchmark harness over a grid of sizes and prints the mean times,
the speedup and the worst residual of each path.

Usage:
    python scripts/timing_claim.py [--family chow] [--op mp] [--sizes 16 32 64]
                                   [--trials 5] [--csv out.csv]
"""

import argparse
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.bench import BenchOp, run_bench, speedup_summary, write_csv
from app.core.config import get_settings
from app.core.logging import configure_logging
from app.gallery import GalleryFamily, GallerySpec, SliceRule


def run_sweep(
    family: str,
    op: str,
    sizes: list[int],
    trials: int,
    slice_rule: str,
    seed: int,
    csv_path: Path | None = None,
) -> bool:
    """Benchmark cubic tensors of every size.

    Returns:
        Whether the tensor path was faster at every size that ran
    """
    print(f"Timing {op} on {family} tensors, {trials} trials each")
    print("=" * 60)

    records = []
    for size in sizes:
        spec = GallerySpec(
            family=family, rows=size, cols=size, n=size, slice_rule=slice_rule, seed=seed
        )
        record = run_bench(spec, op, trials=trials, seed=seed)
        records.append(record)
        if record.failed:
            print(f"  {record.size_tensor}: failed ({record.error})")
            continue
        worst_t = max(record.report_tensor.values().values())
        worst_m = max(record.report_matrix.values().values())
        print(
            f"  {record.size_tensor} vs {record.size_matrix}: "
            f"tensor {record.mt_tensor:.4f}s  matrix {record.mt_matrix:.4f}s  "
            f"max residual {worst_t:.1e} / {worst_m:.1e}"
        )

    summary = speedup_summary(records)
    if csv_path is not None:
        write_csv(records, csv_path)
        print(f"\nWrote {csv_path}")

    print("\n" + "-" * 60)
    if summary.empty:
        print("✗ No configuration completed")
        return False
    print(summary.to_string(index=False))
    faster = bool((summary["speedup"] > 1.0).all())
    if faster:
        print("✓ Tensor path faster at every size")
    else:
        print("✗ Tensor path slower at some size")
    return faster


def main():
    """Main entry point."""
    settings = get_settings()
    parser = argparse.ArgumentParser(description="Time the tensor path against the flattened path")
    parser.add_argument(
        "--family",
        default=GalleryFamily.CHOW.value,
        choices=[f.value for f in GalleryFamily],
    )
    parser.add_argument("--op", default=BenchOp.MP.value, choices=[op.value for op in BenchOp])
    parser.add_argument(
        "--sizes",
        type=int,
        nargs="+",
        default=[16, 32, 64],
        help="Edge lengths of the cubic test tensors (default: 16 32 64)",
    )
    parser.add_argument(
        "--trials",
        type=int,
        default=settings.bench_default_trials,
        help=f"Timed runs per path (default: {settings.bench_default_trials})",
    )
    parser.add_argument(
        "--slice-rule",
        default=SliceRule.REPLICATE.value,
        choices=[r.value for r in SliceRule],
    )
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--csv", type=Path, help="Write the per-residual table here")
    args = parser.parse_args()

    configure_logging(settings)
    ok = run_sweep(
        args.family, args.op, args.sizes, args.trials, args.slice_rule, args.seed, args.csv
    )
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
