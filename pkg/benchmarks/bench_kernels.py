#!/usr/bin/env python3
"""Benchmark the compiled classification kernel against the pure-Python
twin, plus an end-to-end synthesis timing at the selected backend.

Usage:
    python benchmarks/bench_kernels.py [--sizes 300,600,1200] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time
from array import array

from starkit import KERNEL_BACKEND, GreedyConfig, run_synthesis
from starkit._kernels import pure
from starkit.generators import block_schedule

try:
    from starkit._kernels import _fast
except ImportError:
    _fast = None


def packed_random_lifetimes(n: int, seed: int):
    """Random valid lifetime arrays: distinct writes, 1-3 reads each."""
    rng = random.Random(seed)
    writes = rng.sample(range(3 * n), n)
    writes.sort()
    tmin = array("q")
    tmax = array("q")
    tfirst = array("q")
    roff = array("q", [0])
    rdates = array("q")
    for w in writes:
        k = rng.randint(1, 3)
        reads = sorted(rng.sample(range(w + 1, w + 2 + 4 * k), k))
        tmin.append(w)
        tfirst.append(reads[0])
        tmax.append(reads[-1])
        rdates.extend(reads)
        roff.append(len(rdates))
    return tmin, tmax, tfirst, roff, rdates


def best_of(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="300,600,1200")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(x) for x in args.sizes.split(",")]

    print(f"selected backend: {KERNEL_BACKEND}")
    print()
    print(f"{'n':>6} {'pairs':>9} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for n in sizes:
        packed = packed_random_lifetimes(n, seed=7)
        t_pure = best_of(pure.pair_tags, packed, args.repeat)
        if _fast is not None:
            t_fast = best_of(_fast.pair_tags, packed, args.repeat)
            ratio = f"{t_pure / t_fast:7.1f}x"
            fast_s = f"{t_fast * 1e3:8.2f}ms"
            same = list(zip(*[a.tolist() for a in pure.pair_tags(*packed)])) == list(
                zip(*[a.tolist() for a in _fast.pair_tags(*packed)])
            )
            assert same, "backend outputs diverge"
        else:
            fast_s = "n/a"
            ratio = "n/a"
        print(f"{n:>6} {n * (n - 1) // 2:>9} {t_pure * 1e3:8.2f}ms {fast_s:>10} {ratio:>8}")

    print()
    s = block_schedule(16, 16)
    t0 = time.perf_counter()
    _, report = run_synthesis(s, GreedyConfig(min_len=7))
    dt = time.perf_counter() - t0
    print(
        f"end-to-end synthesis of {s.name} ({s.n_data} data) on the "
        f"{KERNEL_BACKEND} backend: {dt * 1e3:.1f} ms "
        f"(ctrl {report.ctrl}, saved {report.saved})"
    )


if __name__ == "__main__":
    main()
