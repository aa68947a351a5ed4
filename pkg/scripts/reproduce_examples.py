#!/usr/bin/env python
"""Reproduce the small worked examples of outer inverses.

Computes each example, prints the frontal slices of the result and the
residuals of the defining equations, and checks the results against the
known values.

Usage:
    python scripts/reproduce_examples.py [--verbose]
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np

from app.core.config import get_settings
from app.core.exceptions import ExistenceFailedError
from app.core.logging import configure_logging
from app.outer import group_inverse, moore_penrose, outer_null, outer_qr, outer_range, outer_range_null
from app.tensors.algebra import t_transpose
from app.tensors.tensor import Tensor3
from app.verification.metrics import residuals


def _q(*rows):
    return np.array([[float(Fraction(v)) for v in row] for row in rows])


S = Tensor3.from_slices([[[1, 1], [-2, 0]], [[0, 1], [1, -2]], [[0, -1], [1, 2]]])
RANGE_T = Tensor3.from_slices([
    [[-1, 1, -2], [-2, 1, -2]],
    [[-2, 1, 1], [2, -2, 0]],
    [[2, -1, 2], [0, 1, 2]],
])
RANGE_X = Tensor3.from_slices([
    _q([0, "-1/3"], ["1/2", "1/6"]),
    _q([0, 0], ["-1/2", "-1/6"]),
    _q([1, "1/3"], [0, 0]),
])
NULL_T = Tensor3.from_slices([
    [[0, 1], [1, -1], [0, 1]],
    [[1, 0], [0, 0], [1, 0]],
    [[0, 0], [-1, 1], [1, 1]],
])
NULL_X = Tensor3.from_slices([
    _q(["-1/6", "-1/6"], ["2/3", "1/3"]),
    _q(["-1/6", "1/6"], ["-1/3", 0]),
    _q(["5/6", "1/2"], ["1/6", "1/6"]),
])
B = Tensor3.from_slices([[[1, 2, 1], [0, 0, 1]]] * 3)
C = Tensor3.from_slices([
    [[1, 2], [0, 0], [1, 1]],
    [[1, 2], [1, 0], [1, 1]],
    [[1, 2], [1, 0], [1, 1]],
])
MP_S = Tensor3.from_slices([
    [[0, -1, -1, -1], [0, 1, -1, 1], [0, 0, 0, 0]],
    [[1, 1, 1, 0], [-1, -1, 1, 1], [0, 0, 0, 0]],
])
GROUP_S = Tensor3.from_slices([
    [[2, 2, 0, -1], [2, 4, 0, 1], [0, 0, 4, 1], [-1, 1, 1, 3]],
    [[0, -2, 0, -2], [-2, -4, 0, -1], [0, 0, -4, -1], [-2, -1, -1, 2]],
])


def show(title: str, x: Tensor3, verbose: bool) -> None:
    print(f"\n{title}  ({x.p}x{x.q}x{x.n})")
    if verbose:
        with np.printoptions(precision=4, suppress=True):
            for k in range(x.n):
                print(f"  slice {k + 1}:")
                print("   " + str(x.frontal_slice(k)).replace("\n", "\n   "))


def report(s: Tensor3, x: Tensor3, k: int | None = None) -> None:
    values = residuals(s, x, k).values()
    print("  " + "  ".join(f"{name.upper()}={value:.2e}" for name, value in values.items()))


def check(label: str, ok: bool, failures: list[str]) -> None:
    print(f"  {'✓' if ok else '✗'} {label}")
    if not ok:
        failures.append(label)


def run_examples(verbose: bool = False) -> list[str]:
    """Run every example.

    Returns:
        Labels of the checks that failed
    """
    failures: list[str] = []
    print("=" * 60)

    result = outer_range(S, RANGE_T)
    show("Outer inverse with range R(T)", result.inverse, verbose)
    print(f"  ranks: {dict(result.ranks_checked)}")
    report(S, result.inverse)
    check("matches known inverse", result.inverse.allclose(RANGE_X, rtol=0, atol=1e-10), failures)

    result = outer_null(S, NULL_T)
    show("Outer inverse with null space N(T)", result.inverse, verbose)
    print(f"  ranks: {dict(result.ranks_checked)}")
    report(S, result.inverse)
    check("matches known inverse", result.inverse.allclose(NULL_X, rtol=0, atol=1e-10), failures)

    print("\nOuter inverse with range R(B) and null space N(C)")
    try:
        outer_range_null(S, B, C)
        check("rank condition fails", False, failures)
    except ExistenceFailedError as exc:
        print(f"  ranks: {exc.ranks}")
        check("rank condition fails", exc.ranks == {"rank_t(C*T*B)": 1, "rank_t(B)": 2, "rank_t(C)": 4}, failures)

    direct = moore_penrose(MP_S).inverse
    via_qr = outer_qr(MP_S, t_transpose(MP_S))
    show("Moore-Penrose inverse", direct, verbose)
    report(MP_S, direct)
    check(f"t-QR partition rank {via_qr.extras['partition_rank']}", via_qr.extras["partition_rank"] == 2, failures)
    check("t-QR route agrees", via_qr.inverse.allclose(direct, rtol=0, atol=1e-10), failures)

    group = group_inverse(GROUP_S).inverse
    show("Group inverse", group, verbose)
    report(GROUP_S, group, k=1)
    values = residuals(GROUP_S, group).values()
    check("E1, E2, E5 below 1e-8", max(values["e1"], values["e2"], values["e5"]) <= 1e-8, failures)

    print("\n" + "-" * 60)
    if failures:
        print(f"✗ {len(failures)} check(s) failed")
    else:
        print("✓ All examples reproduced")
    return failures


def main():
    """Main entry point."""
    parser = argparse.ArgumentParser(description="Reproduce the worked outer-inverse examples")
    parser.add_argument(
        "--verbose",
        "-v",
        action="store_true",
        help="Print the frontal slices of every result",
    )
    args = parser.parse_args()

    configure_logging(get_settings())
    sys.exit(1 if run_examples(verbose=args.verbose) else 0)


if __name__ == "__main__":
    main()
