from __future__ import annotations

import pytest

from starkit import (
    CompatTag,
    GreedyConfig,
    build_rcg,
    compute_lifetimes,
    fill_factor,
    greedy_bind,
    longest_chain,
    size_fifo,
    size_lifo,
    structure_lifetime,
)
from starkit.generators import identity_schedule, reversal_schedule

from helpers import random_lifetimes


@pytest.fixture(scope="module")
def fig_graph(fig1d):
    return build_rcg(compute_lifetimes(fig1d))


def test_longest_fifo_chain_canonical(fig_graph):
    c = longest_chain(fig_graph, CompatTag.FIFO)
    assert c.members == ("a", "b", "f")
    assert c.capacity == 2
    assert c.lifetime == (0, 11)


def test_longest_lifo_chain_canonical_tiebreak(fig_graph):
    c = longest_chain(fig_graph, CompatTag.LIFO)
    assert c.members == ("a", "c")  # earliest-start two-member chain wins
    assert c.capacity == 2


def test_longest_chain_identity_spans_all():
    g = build_rcg(compute_lifetimes(identity_schedule(5, 3)))
    c = longest_chain(g, CompatTag.FIFO)
    assert c.members == ("d0", "d1", "d2", "d3", "d4")
    assert c.capacity == 3


def test_longest_chain_none_without_edges():
    g = build_rcg(compute_lifetimes(identity_schedule(3, 1)))  # register-only graph
    assert longest_chain(g, CompatTag.FIFO) is None
    assert longest_chain(g, CompatTag.LIFO) is None


def test_size_fifo_examples(fig_graph):
    assert size_fifo(("a", "b", "f"), fig_graph) == 2
    assert size_fifo(("a", "b"), fig_graph) == 2
    g5 = build_rcg(compute_lifetimes(identity_schedule(5, 3)))
    assert size_fifo(("d0", "d1", "d2", "d3", "d4"), g5) == 3


def test_size_lifo_is_member_count():
    assert size_lifo(("x", "y")) == 2
    assert size_lifo(("w", "x", "y", "z")) == 4


def test_structure_lifetime_kinds(fig_graph):
    lts = fig_graph.lifetimes
    assert structure_lifetime(("a", "b", "f"), CompatTag.FIFO, lts) == (0, 11)
    assert structure_lifetime(("a", "c"), CompatTag.LIFO, lts) == (0, 4)
    assert structure_lifetime(("c",), CompatTag.REGISTER, lts) == (1, 3)


def test_fill_factor_canonical(fig_graph):
    fill = fill_factor(("a", "b", "f"), 2, fig_graph.lifetimes)
    assert fill == pytest.approx(17 / 24)


def test_fill_factor_saturates_at_one():
    lts = random_lifetimes(3)
    any_id = next(iter(lts))
    assert fill_factor((any_id,), 1, lts) == 1.0


def test_greedy_bind_canonical(fig1d, fig_graph):
    cfg = GreedyConfig(min_len=2, fill_threshold=0.0, priority="fifo_first")
    bound = greedy_bind(fig_graph, cfg, compute_lifetimes(fig1d))
    by_kind = {}
    for n in bound.nodes:
        by_kind.setdefault(n.kind, []).append(n)
    assert [n.members for n in by_kind[CompatTag.FIFO]] == [("a", "b", "f")]
    assert by_kind[CompatTag.FIFO][0].capacity == 2
    assert sorted(n.members[0] for n in by_kind[CompatTag.REGISTER]) == ["c", "d", "e"]
    assert CompatTag.LIFO not in by_kind


def test_greedy_bind_disabled_structures_yields_registers(fig1d, fig_graph):
    cfg = GreedyConfig(fifo_enabled=False, lifo_enabled=False)
    bound = greedy_bind(fig_graph, cfg, compute_lifetimes(fig1d))
    assert all(n.kind is CompatTag.REGISTER and n.capacity == 1 for n in bound.nodes)
    assert len(bound.nodes) == 6


def test_greedy_bind_reversal_single_lifo():
    s = reversal_schedule(4)
    lts = compute_lifetimes(s)
    bound = greedy_bind(build_rcg(lts), GreedyConfig(), lts)
    assert len(bound.nodes) == 1
    node = bound.nodes[0]
    assert node.kind is CompatTag.LIFO
    assert node.capacity == 4
    assert node.members == ("d0", "d1", "d2", "d3")


def test_greedy_bind_partitions_data():
    for seed in range(25):
        lts = random_lifetimes(seed)
        g = build_rcg(lts)
        bound = greedy_bind(g, GreedyConfig(), lts)
        covered = [m for n in bound.nodes for m in n.members]
        assert sorted(covered) == sorted(lts)


def test_greedy_bind_min_len_filter(fig1d, fig_graph):
    lts = compute_lifetimes(fig1d)
    bound = greedy_bind(fig_graph, GreedyConfig(min_len=4), lts)
    assert all(n.kind is CompatTag.REGISTER for n in bound.nodes)


def test_greedy_bind_fill_filter(fig1d, fig_graph):
    lts = compute_lifetimes(fig1d)
    # canonical chain fills 17/24; a 0.9 bar rejects it
    bound = greedy_bind(fig_graph, GreedyConfig(fill_threshold=0.9), lts)
    assert all(n.kind is CompatTag.REGISTER for n in bound.nodes)


def test_greedy_knobs_monotone():
    for seed in range(15):
        lts = random_lifetimes(seed, n=12)
        g = build_rcg(lts)

        def structures(cfg: GreedyConfig) -> int:
            bound = greedy_bind(g, cfg, lts)
            return sum(1 for n in bound.nodes if n.kind is not CompatTag.REGISTER)

        counts = [structures(GreedyConfig(min_len=m)) for m in (2, 3, 5, 8)]
        assert all(a >= b for a, b in zip(counts, counts[1:]))
        counts = [
            structures(GreedyConfig(fill_threshold=f)) for f in (0.0, 0.5, 0.8, 1.0)
        ]
        assert all(a >= b for a, b in zip(counts, counts[1:]))


def test_greedy_bind_deterministic_serialization(fig1d, fig_graph):
    import json

    lts = compute_lifetimes(fig1d)
    cfg = GreedyConfig()
    one = json.dumps(greedy_bind(fig_graph, cfg, lts).to_json_dict(), sort_keys=True)
    two = json.dumps(greedy_bind(build_rcg(lts), cfg, lts).to_json_dict(), sort_keys=True)
    assert one == two


def test_replay_chain_detects_discipline_breaks(fig_graph):
    from starkit.binding import replay_chain

    lts = fig_graph.lifetimes
    # (a, b, f) is a real queue chain; (a, c) is nested, so a queue
    # replay must flag c (it leaves before a)
    assert replay_chain(("a", "b", "f"), CompatTag.FIFO, lts) is None
    assert replay_chain(("a", "c"), CompatTag.FIFO, lts) == "c"
    assert replay_chain(("a", "c"), CompatTag.LIFO, lts) is None
    assert replay_chain(("a", "b"), CompatTag.LIFO, lts) == "a"


def test_greedy_bind_evicts_on_failed_replay(fig1d):
    # hand-build a graph with a wrong tag: the replay guard must evict
    # the offender instead of emitting an unplayable structure
    from starkit.rcg import Rcg, RcgEdge

    lts = compute_lifetimes(fig1d)
    bogus = Rcg(
        order=tuple(lts),
        lifetimes=dict(lts),
        edges=(RcgEdge("a", "c", CompatTag.FIFO),),
    )
    bound = greedy_bind(bogus, GreedyConfig(), lts)
    assert all(n.kind is CompatTag.REGISTER for n in bound.nodes)
    covered = sorted(m for n in bound.nodes for m in n.members)
    assert covered == sorted(lts)


def test_config_validation():
    with pytest.raises(ValueError):
        GreedyConfig(min_len=1)
    with pytest.raises(ValueError):
        GreedyConfig(fill_threshold=1.5)
    with pytest.raises(ValueError):
        GreedyConfig(priority="widest_first")
    # min_len unconstrained when no structure kind is enabled
    GreedyConfig(min_len=1, fifo_enabled=False, lifo_enabled=False)


def test_config_json_round_trip():
    cfg = GreedyConfig(min_len=7, fill_threshold=0.95, priority="lifo_first")
    assert GreedyConfig.from_json_dict(cfg.to_json_dict()) == cfg
    with pytest.raises(ValueError, match="unknown field"):
        GreedyConfig.from_json_dict({"min_len": 7, "depth": 3})
