from __future__ import annotations

from starkit import (
    CompatTag,
    GreedyConfig,
    HierNode,
    build_hier_rcg,
    build_rcg,
    compute_lifetimes,
    greedy_bind,
    maxlive,
    merge_structures,
    simulate,
    generate_architecture,
)
from starkit.binding import BoundGraph
from starkit.optimize import spans_disjoint

from helpers import interleaved_schedule, random_lifetimes


def _bound(fig1d):
    lts = compute_lifetimes(fig1d)
    g = build_rcg(lts)
    return greedy_bind(g, GreedyConfig(), lts)


def _node(nid, kind, members, capacity, lifetime):
    return HierNode(id=nid, kind=kind, members=members, capacity=capacity, lifetime=lifetime)


def test_spans_disjoint_boundary_and_interleave():
    assert spans_disjoint(((0, 3),), ((3, 6),))  # handoff boundary allowed
    assert not spans_disjoint(((0, 3),), ((2, 6),))
    assert spans_disjoint(((0, 3), (10, 14)), ((4, 9),))  # interleaved gap
    assert not spans_disjoint(((0, 3), (10, 14)), ((4, 11),))


def test_hier_rcg_canonical(fig1d):
    bound = _bound(fig1d)
    h = build_hier_rcg(bound)
    pairs = {(e.src, e.dst) for e in h.edges}
    regs = sorted(n.id for n in bound.nodes if n.kind is CompatTag.REGISTER)
    assert pairs == {(regs[0], regs[1]), (regs[0], regs[2]), (regs[1], regs[2])}
    assert all(e.tag is CompatTag.REGISTER for e in h.edges)


def test_hier_rcg_same_kind_only():
    fifo_a = _node("fifo0", CompatTag.FIFO, ("a", "b"), 2, ((0, 5),))
    fifo_b = _node("fifo1", CompatTag.FIFO, ("c", "d"), 2, ((6, 9),))
    lifo = _node("lifo0", CompatTag.LIFO, ("e", "f"), 2, ((10, 15),))
    lts = random_lifetimes(0, n=2)
    bound = BoundGraph(nodes=(fifo_a, fifo_b, lifo), rcg=build_rcg(lts))
    h = build_hier_rcg(bound)
    assert {(e.src, e.dst) for e in h.edges} == {("fifo0", "fifo1")}


def test_hier_rcg_overlap_no_edge():
    lifo_a = _node("lifo0", CompatTag.LIFO, ("a", "b"), 2, ((0, 7),))
    lifo_b = _node("lifo1", CompatTag.LIFO, ("c", "d"), 2, ((5, 9),))
    bound = BoundGraph(nodes=(lifo_a, lifo_b), rcg=build_rcg(random_lifetimes(0, n=2)))
    assert build_hier_rcg(bound).edges == ()


def test_merge_canonical(fig1d):
    bound = _bound(fig1d)
    merged = merge_structures(build_hier_rcg(bound), bound)
    assert len(merged.nodes) == 2
    kinds = {n.kind for n in merged.nodes}
    assert kinds == {CompatTag.FIFO, CompatTag.REGISTER}
    reg = next(n for n in merged.nodes if n.kind is CompatTag.REGISTER)
    assert reg.members == ("c", "e", "d")
    assert reg.capacity == 1
    assert reg.lifetime == ((1, 3), (5, 6), (9, 10))
    assert merged.total_capacity == 3  # vs. 6 one-register-per-datum


def test_merge_sequential_fifos_capacity_is_max():
    fifo_a = _node("fifo0", CompatTag.FIFO, ("a", "b", "c"), 3, ((0, 5),))
    fifo_b = _node("fifo1", CompatTag.FIFO, ("d", "e"), 2, ((6, 9),))
    bound = BoundGraph(nodes=(fifo_a, fifo_b), rcg=build_rcg(random_lifetimes(0, n=2)))
    merged = merge_structures(build_hier_rcg(bound), bound)
    assert len(merged.nodes) == 1
    node = merged.nodes[0]
    assert node.capacity == 3
    assert node.members == ("a", "b", "c", "d", "e")
    assert node.lifetime == ((0, 5), (6, 9))


def test_merge_without_edges_is_identity(fig1d):
    bound = _bound(fig1d)
    once = merge_structures(build_hier_rcg(bound), bound)
    assert build_hier_rcg(once).edges == ()
    twice = merge_structures(build_hier_rcg(once), once)
    assert twice == once


def test_merge_never_groups_overlapping_nodes():
    # disjointness of interval unions is not transitive: the gapped node
    # pairs with both, but its neighbors overlap each other
    gapped = _node("register0", CompatTag.REGISTER, ("a",), 1, ((0, 3), (10, 14)))
    middle = _node("register1", CompatTag.REGISTER, ("b",), 1, ((4, 9),))
    late = _node("register2", CompatTag.REGISTER, ("c",), 1, ((10, 14),))
    bound = BoundGraph(nodes=(gapped, middle, late), rcg=build_rcg(random_lifetimes(0, n=3)))
    h = build_hier_rcg(bound)
    assert {(e.src, e.dst) for e in h.edges} == {
        ("register0", "register1"),
        ("register1", "register2"),
    }
    merged = merge_structures(h, bound)
    for n in merged.nodes:
        for i, a in enumerate(n.lifetime):
            for b in n.lifetime[i + 1 :]:
                assert spans_disjoint((a,), (b,))
    # the overlapping pair must stay apart
    owner = {m: n.id for n in merged.nodes for m in n.members}
    assert owner["a"] != owner["c"]


def test_merge_reduces_capacity_and_respects_maxlive():
    for seed in range(20):
        s = interleaved_schedule(seed, n_max=16)
        lts = compute_lifetimes(s)
        g = build_rcg(lts)
        bound = greedy_bind(g, GreedyConfig(), lts)
        merged = merge_structures(build_hier_rcg(bound), bound)
        assert merged.total_capacity <= bound.total_capacity
        assert len(merged.nodes) <= len(bound.nodes)
        assert merged.total_capacity >= maxlive(s)


def test_post_merge_simulation_still_passes():
    for seed in range(20):
        s = interleaved_schedule(seed, n_max=16)
        lts = compute_lifetimes(s)
        bound = greedy_bind(build_rcg(lts), GreedyConfig(), lts)
        merged = merge_structures(build_hier_rcg(bound), bound)
        trace = simulate(generate_architecture(merged, s), s)
        assert trace.verdict == "pass"
