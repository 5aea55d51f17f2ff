#!/usr/bin/env python3
"""Benchmark the lattice-scan backends against each other.

Scans dilated simplices in 2D and 3D through every available backend and
prints a timing table.  The numba backend is compiled (and cached) during
warmup, so the timings show steady-state throughput.

    python benchmarks/bench_latticescan.py [--repeat 5]
"""

import argparse
import importlib.util
import time

from toricorigami import make_polytope
from toricorigami._latticescan import scan_box

CASES = {
    "simplex-2d-k600": make_polytope(
        [((-1, 0), 0), ((0, -1), 0), ((1, 1), 600)]
    ),
    "box-2d-500": make_polytope(
        [((-1, 0), 0), ((0, -1), 0), ((1, 0), 500), ((0, 1), 500)]
    ),
    "simplex-3d-k80": make_polytope(
        [((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0), ((1, 1, 1), 80)]
    ),
}


def scan_args(P):
    import math

    lo, hi = P.bounding_box()
    rows, rhs = [], []
    for hs in P.halfspaces:
        q = hs.offset.denominator
        rows.append(tuple(q * a for a in hs.normal))
        rhs.append(hs.offset.numerator)
    return (
        rows,
        rhs,
        tuple(math.ceil(c) for c in lo),
        tuple(math.floor(c) for c in hi),
    )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = ["python", "numpy"]
    if importlib.util.find_spec("numba"):
        backends.append("numba")

    print(f"{'case':<18} {'backend':<8} {'points':>8} {'best (ms)':>10}")
    for name, P in CASES.items():
        rows, rhs, lo, hi = scan_args(P)
        reference = None
        for backend in backends:
            scan_box(rows, rhs, lo, hi, backend=backend)  # warmup / compile
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                points = scan_box(rows, rhs, lo, hi, backend=backend)
                best = min(best, time.perf_counter() - t0)
            if reference is None:
                reference = points
            assert points == reference, f"{backend} disagrees on {name}"
            print(f"{name:<18} {backend:<8} {len(points):>8} {best * 1e3:>10.2f}")


if __name__ == "__main__":
    main()
