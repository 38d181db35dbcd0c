"""Deterministic schedule generators for test corpora and CLI use.

All generators emit one-input, one-output schedules with a single write
and a single read per datum; richer shapes (parallel ports, multi-read
data) come in through the constraint-file path.
"""

from __future__ import annotations

import random

from .schedule import AccessEvent, DataItem, Port, Schedule

DEFAULT_WIDTH = 8

KINDS = ("identity", "reversal", "block", "random")


def _wrap(name: str, n: int, writes: list[int], reads: list[tuple[str, int]]) -> Schedule:
    ports = (
        Port("in0", "input", DEFAULT_WIDTH),
        Port("out0", "output", DEFAULT_WIDTH),
    )
    data = tuple(DataItem(f"d{i}", DEFAULT_WIDTH) for i in range(n))
    events = [
        AccessEvent(f"d{i}", "in0", cycle, "write") for i, cycle in enumerate(writes)
    ]
    events += [AccessEvent(d, "out0", cycle, "read") for d, cycle in reads]
    return Schedule(name=name, ports=ports, data=data, events=tuple(events))


def identity_schedule(n: int, latency: int) -> Schedule:
    """Write i at cycle i, read it back latency cycles later."""
    if n < 1:
        raise ValueError("identity: n must be positive")
    if latency < 1:
        raise ValueError("identity: latency must be at least 1")
    writes = list(range(n))
    reads = [(f"d{i}", i + latency) for i in range(n)]
    return _wrap(f"identity_n{n}_l{latency}", n, writes, reads)


def reversal_schedule(n: int) -> Schedule:
    """Write 0..n-1 in order, read them back reversed starting at n."""
    if n < 1:
        raise ValueError("reversal: n must be positive")
    writes = list(range(n))
    reads = [(f"d{n - 1 - k}", n + k) for k in range(n)]
    return _wrap(f"reversal_n{n}", n, writes, reads)


def min_block_offset(rows: int, cols: int) -> int:
    """Smallest read-start cycle keeping every column-major read after
    its row-major write."""
    return (rows - 1) * (cols - 1) + 1


def block_schedule(rows: int, cols: int, offset: int | None = None) -> Schedule:
    """Row-major writes, column-major reads starting at the offset; the
    classic block-interleaver access pattern."""
    if rows < 1 or cols < 1:
        raise ValueError("block: rows and cols must be positive")
    if offset is None:
        offset = min_block_offset(rows, cols)
    n = rows * cols
    writes = list(range(n))
    reads = []
    k = 0
    for c in range(cols):
        for r in range(rows):
            idx = r * cols + c
            cycle = offset + k
            if cycle <= idx:
                raise ValueError(
                    f"block: offset {offset} reads d{idx} at cycle {cycle}, "
                    f"before its write at cycle {idx}"
                )
            reads.append((f"d{idx}", cycle))
            k += 1
    return _wrap(f"block_r{rows}_c{cols}_o{offset}", n, writes, reads)


def random_schedule(n: int, seed: int, offset: int | None = None) -> Schedule:
    """Write 0..n-1 in order, read a seeded random permutation starting
    at the offset (default n, the smallest always-valid start)."""
    if n < 1:
        raise ValueError("random: n must be positive")
    if offset is None:
        offset = n
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    writes = list(range(n))
    reads = []
    for k, idx in enumerate(perm):
        cycle = offset + k
        if cycle <= idx:
            raise ValueError(
                f"random: offset {offset} reads d{idx} at cycle {cycle}, "
                f"before its write at cycle {idx}"
            )
        reads.append((f"d{idx}", cycle))
    return _wrap(f"random_n{n}_s{seed}_o{offset}", n, writes, reads)


def gen_schedule(kind: str, **params) -> Schedule:
    """Dispatch to a generator by kind; unknown kinds and invalid
    parameters raise ValueError."""
    if kind == "identity":
        out = identity_schedule(params.pop("n", 8), params.pop("latency", 1))
    elif kind == "reversal":
        out = reversal_schedule(params.pop("n", 8))
    elif kind == "block":
        out = block_schedule(
            params.pop("rows", 4), params.pop("cols", 4), params.pop("offset", None)
        )
    elif kind == "random":
        out = random_schedule(
            params.pop("n", 8), params.pop("seed", 0), params.pop("offset", None)
        )
    else:
        raise ValueError(f"unknown schedule kind {kind!r} (expected one of {KINDS})")
    if params:
        raise ValueError(f"{kind}: unexpected parameter {sorted(params)[0]!r}")
    return out
