#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot loops on both implementations and prints a timing
table.  Usage:  python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import rulespace._kernels_py as pure  # noqa: E402

try:
    import rulespace._kernels as compiled
except ImportError:
    compiled = None

from rulespace.feasibility import sample_feasible  # noqa: E402


def best_of(repeat, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(name, repeat, fn_name, *args):
    t_pure, r_pure = best_of(repeat, getattr(pure, fn_name), *args)
    row = f"{name:<42} pure {t_pure * 1e3:9.1f} ms"
    if compiled is not None:
        t_fast, r_fast = best_of(repeat, getattr(compiled, fn_name), *args)
        assert r_pure == r_fast, f"implementations disagree on {name}"
        row += f"   compiled {t_fast * 1e3:9.2f} ms   speedup {t_pure / t_fast:7.1f}x"
    print(row)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if compiled is None:
        print("compiled kernels not built; showing pure-Python timings only")
        print("build them with: python setup.py build_ext --inplace\n")

    full4 = 1 << 16
    bench("de Bruijn scan, full mu=4 space", args.repeat, "debruijn_in_range", 4, 0, full4)
    bench("period histogram mu=4, fixed init 1", args.repeat, "histogram_range", 4, 0, full4, pure.HIST_FIXED, 1)
    bench("period histogram mu=4, max over inits", args.repeat, "histogram_range", 4, 0, full4, pure.HIST_MAX, 0)

    values = [r.value for r in sample_feasible(6, 1, 100_000)]

    def label_batch(mod):
        def run(vals):
            return sum(1 for v in vals if mod.is_debruijn(6, v))
        return run

    t_pure, n_pure = best_of(args.repeat, label_batch(pure), values)
    row = f"{'label 1e5 sampled mu=6 rules':<42} pure {t_pure * 1e3:9.1f} ms"
    if compiled is not None:
        t_fast, n_fast = best_of(args.repeat, label_batch(compiled), values)
        assert n_pure == n_fast
        row += f"   compiled {t_fast * 1e3:9.2f} ms   speedup {t_pure / t_fast:7.1f}x"
    print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
