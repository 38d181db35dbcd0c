"""Shared corpus builders for the test suite.

Two random families complement the CLI generators: bare lifetime maps
(for pairwise-rule properties, where only timing matters) and valid
multi-read schedules with interleaved reads (for end-to-end runs that
must exercise register handoffs and non-destructive reads).
"""

from __future__ import annotations

import random

from starkit import Lifetime, Schedule
from starkit.generators import block_schedule, identity_schedule, random_schedule
from starkit.schedule import AccessEvent, DataItem, Port


def random_lifetimes(seed: int, n: int | None = None, max_reads: int = 3) -> dict[str, Lifetime]:
    """Seeded valid lifetime map: distinct write cycles, 1..max_reads
    strictly increasing read cycles per datum. A third of the data get
    wide read spans so nesting (stack-style) relations appear often."""
    rng = random.Random(seed)
    if n is None:
        n = rng.randint(2, 12)
    writes = sorted(rng.sample(range(3 * n), n))
    out: dict[str, Lifetime] = {}
    for i, w in enumerate(writes):
        k = rng.randint(1, max_reads)
        span = 5 * k if rng.random() < 0.67 else 4 * n + 10
        reads = sorted(rng.sample(range(w + 1, w + 2 + span), k))
        name = f"d{i}"
        out[name] = Lifetime(data_id=name, tau_min=w, reads=tuple(reads))
    return out


def interleaved_schedule(seed: int, n_max: int = 30) -> Schedule:
    """Seeded valid single-in/single-out schedule with multi-read data
    and reads interleaved among writes."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    write_cycles = sorted(rng.sample(range(2 * n), n))
    used_reads: set[int] = set()
    events = [
        AccessEvent(f"d{i}", "in0", c, "write") for i, c in enumerate(write_cycles)
    ]
    for i, w in enumerate(write_cycles):
        k = rng.randint(1, 3)
        reads: list[int] = []
        cursor = w
        for _ in range(k):
            cursor = cursor + rng.randint(1, 4)
            while cursor in used_reads:
                cursor += 1
            used_reads.add(cursor)
            reads.append(cursor)
        events += [AccessEvent(f"d{i}", "out0", c, "read") for c in reads]
    return Schedule(
        name=f"interleaved_s{seed}",
        ports=(Port("in0", "input", 8), Port("out0", "output", 8)),
        data=tuple(DataItem(f"d{i}", 8) for i in range(n)),
        events=tuple(events),
    )


def acceptance_corpus() -> list[Schedule]:
    """The schedules every end-to-end acceptance check runs over."""
    corpus: list[Schedule] = []
    for latency in range(1, 7):
        corpus.append(identity_schedule(12, latency))
    for rows in range(2, 9):
        for cols in range(2, 9):
            corpus.append(block_schedule(rows, cols))
    corpus.append(block_schedule(8, 8, offset=64))
    for seed in range(100):
        corpus.append(random_schedule(5 + (seed * 7) % 26, seed=seed))
    for seed in range(100):
        corpus.append(interleaved_schedule(seed))
    return corpus
