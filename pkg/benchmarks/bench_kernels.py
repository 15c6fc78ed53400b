"""Benchmark the compiled kernels against the pure numpy fallback.

Runs each hot kernel on real workloads (incidence build, span expansion,
anchored popcount counting) for both backends and prints a comparison
table.  Usage:

    python3 benchmarks/bench_kernels.py [--q 8] [--repeat 3]
"""

import argparse
import time

import numpy as np

from pg4q import _kernels_py
from pg4q.geometry import GeometryIndex
from pg4q.gf import GF

try:
    from pg4q import _fastkernels
except ImportError:
    _fastkernels = None


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    field = GF.of_order(args.q)
    index = GeometryIndex(field)
    lines = index.lines
    members = np.zeros(index.n, dtype=bool)
    members[:: 3] = True
    mask = index.pack_mask(members)

    backends = [("numpy", _kernels_py)]
    if _fastkernels is not None:
        backends.append(("cython", _fastkernels))
    else:
        print("compiled extension not available; benchmarking fallback only")

    workloads = {
        "incidence_matrix": lambda mod: mod.incidence_matrix(
            index.points, index.points, field.mul_table
        ),
        "expand_span(lines)": lambda mod: mod.expand_span(
            lines.bases, lines.reps, field.mul_table, field.degree, index.code_to_index
        ),
        "anchored_counts": lambda mod: mod.anchored_counts(
            lines.anchors, index.solids_by_point, mask
        ),
    }

    print(f"q={args.q}  points={index.n}  lines={len(lines)}  repeat={args.repeat}")
    print(f"{'kernel':24} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup")
    reference = {}
    for label, call in workloads.items():
        times = []
        for name, mod in backends:
            best, out = timeit(lambda m=mod: call(m), args.repeat)
            times.append(best)
            if label in reference:
                assert np.array_equal(reference[label], out), f"{label}: backend mismatch"
            else:
                reference[label] = out
        ratio = times[0] / times[-1] if len(times) > 1 else 1.0
        cells = " ".join(f"{t * 1e3:10.1f}ms" for t in times)
        print(f"{label:24} {cells}   {ratio:6.1f}x")


if __name__ == "__main__":
    main()
