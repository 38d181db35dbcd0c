from __future__ import annotations

import pytest

from starkit import gen_schedule
from starkit.generators import (
    block_schedule,
    identity_schedule,
    min_block_offset,
    random_schedule,
    reversal_schedule,
)


def _reads(s):
    return sorted((e.cycle, e.data_id) for e in s.events if e.kind == "read")


def _writes(s):
    return sorted((e.cycle, e.data_id) for e in s.events if e.kind == "write")


def test_identity_small():
    s = identity_schedule(3, 1)
    assert _writes(s) == [(0, "d0"), (1, "d1"), (2, "d2")]
    assert _reads(s) == [(1, "d0"), (2, "d1"), (3, "d2")]


def test_reversal_small():
    s = reversal_schedule(3)
    assert _reads(s) == [(3, "d2"), (4, "d1"), (5, "d0")]


def test_block_canonical_order():
    s = block_schedule(2, 3, offset=6)
    assert _writes(s) == [(i, f"d{i}") for i in range(6)]
    assert [d for _, d in _reads(s)] == ["d0", "d3", "d1", "d4", "d2", "d5"]
    assert [c for c, _ in _reads(s)] == list(range(6, 12))


def test_block_minimal_offset_valid():
    for rows in (2, 5, 8):
        for cols in (2, 5, 8):
            s = block_schedule(rows, cols)  # offset defaults to the minimum
            assert s.n_data == rows * cols
    assert min_block_offset(10, 12) == 100


def test_block_rejects_too_early_offset():
    with pytest.raises(ValueError, match="before its write"):
        block_schedule(4, 4, offset=3)


def test_random_is_seed_deterministic():
    a = random_schedule(16, seed=9)
    b = random_schedule(16, seed=9)
    assert a == b
    c = random_schedule(16, seed=10)
    assert c != a


def test_random_reads_are_a_permutation():
    s = random_schedule(20, seed=3)
    assert sorted(d for _, d in _reads(s)) == sorted(f"d{i}" for i in range(20))


def test_gen_schedule_dispatch_and_errors():
    assert gen_schedule("identity", n=4, latency=2).n_data == 4
    assert gen_schedule("reversal", n=4).n_data == 4
    assert gen_schedule("block", rows=2, cols=2).n_data == 4
    assert gen_schedule("random", n=4, seed=1).n_data == 4
    with pytest.raises(ValueError, match="unknown schedule kind"):
        gen_schedule("spiral")
    with pytest.raises(ValueError, match="latency"):
        gen_schedule("identity", n=4, latency=0)
    with pytest.raises(ValueError, match="unexpected parameter"):
        gen_schedule("reversal", n=4, latency=2)
