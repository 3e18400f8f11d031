#!/usr/bin/env python3
"""Time the schedule decode kernel: compiled extension vs pure Python.

Usage: python benchmarks/bench_decode.py [--repeats N]
"""

import argparse
import importlib
import time
from pathlib import Path

import numpy as np

from tgsched._core import _listsched_py
from tgsched.graph import TaskGraph, load_graph
from tgsched.rng import Xoshiro256StarStar
from tgsched.schedule import gene_range

REPO = Path(__file__).resolve().parent.parent


def layered_graph(k: int, rng: Xoshiro256StarStar) -> TaskGraph:
    """Synthetic wide DAG: every task points at up to three later tasks."""
    costs = tuple(rng.randint(1, 20) for _ in range(k))
    edges = {}
    for u in range(k - 1):
        for _ in range(3):
            v = u + 1 + rng.randbelow(min(10, k - 1 - u))
            edges.setdefault((u, v), rng.randint(0, 15))
    return TaskGraph(
        costs=costs,
        edges=tuple((u, v, c) for (u, v), c in sorted(edges.items())),
    )


def bench(kernel, g: TaskGraph, chroms, nprocs: int, repeats: int) -> float:
    arrs = g.kernel_arrays
    args = (arrs.costs, arrs.pred_ptr, arrs.pred_src, arrs.pred_comm,
            arrs.succ_ptr, arrs.succ_dst, nprocs)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for genes in chroms:
            kernel(genes, *args)
        best = min(best, (time.perf_counter() - t0) / len(chroms))
    return best * 1e6  # microseconds per decode


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    kernels = {"python": _listsched_py.decode_kernel}
    try:
        ext = importlib.import_module("tgsched._core._listsched")
        kernels["cython"] = ext.decode_kernel
    except ImportError:
        print("compiled extension not available; timing pure Python only")

    rng = Xoshiro256StarStar(7)
    cases = [
        ("rand0010_cc k=52", load_graph(str(REPO / "graphs/rand0010_cc.json"),
                                        "native")),
        ("layered k=300", layered_graph(300, rng)),
    ]
    print(f"{'case':<20} {'kernel':<8} {'us/decode':>10}   speedup")
    for name, g in cases:
        k = g.task_count
        bound = gene_range(k, 2)
        chroms = [
            np.fromiter((rng.randbelow(bound) for _ in range(k)),
                        dtype=np.int64, count=k)
            for _ in range(200)
        ]
        base = None
        for kname in ("python", "cython"):
            if kname not in kernels:
                continue
            us = bench(kernels[kname], g, chroms, 2, args.repeats)
            if base is None:
                base = us
                print(f"{name:<20} {kname:<8} {us:>10.2f}   1.0x")
            else:
                print(f"{name:<20} {kname:<8} {us:>10.2f}   {base / us:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
