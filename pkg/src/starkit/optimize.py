"""Architecture optimization: merge same-kind structures whose usage
windows never overlap, so one physical element serves several in turn.

A second compatibility graph is built over the bound nodes; only
register-style (time-disjoint) compatibility between same-kind nodes is
considered. Longest disjoint paths are folded into single nodes until no
mergeable pair remains.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binding import BoundGraph, HierNode, Interval
from .rcg import CompatTag, RcgEdge


@dataclass(frozen=True)
class HierRcg:
    """Compatibility graph over bound nodes; vertices carry interval-set
    lifetimes and all edges are register-tagged."""

    order: tuple[str, ...]
    spans: dict[str, tuple[Interval, ...]]
    kinds: dict[str, CompatTag]
    edges: tuple[RcgEdge, ...]


def spans_disjoint(u: tuple[Interval, ...], v: tuple[Interval, ...]) -> bool:
    """True when no interval of u overlaps an interval of v. Sharing a
    boundary cycle is not an overlap: the read phase frees the slot
    before the write phase fills it."""
    i = j = 0
    while i < len(u) and j < len(v):
        a, b = u[i], v[j]
        if a[0] < b[1] and b[0] < a[1]:
            return False
        if a[1] <= b[1]:
            i += 1
        else:
            j += 1
    return True


def _node_key(n: HierNode) -> tuple[int, str]:
    return (n.start, n.id)


def build_hier_rcg(b: BoundGraph) -> HierRcg:
    """Register-compatibility graph over hierarchical nodes: an edge
    joins two same-kind nodes whose lifetimes never overlap, oriented
    from the earlier-starting node."""
    nodes = sorted(b.nodes, key=_node_key)
    order = tuple(n.id for n in nodes)
    spans = {n.id: n.lifetime for n in nodes}
    kinds = {n.id: n.kind for n in nodes}
    edges = []
    for i, u in enumerate(nodes):
        for v in nodes[i + 1 :]:
            if u.kind is v.kind and spans_disjoint(u.lifetime, v.lifetime):
                edges.append(RcgEdge(u.id, v.id, CompatTag.REGISTER))
    return HierRcg(order=order, spans=spans, kinds=kinds, edges=tuple(edges))


def _longest_disjoint_path(h: HierRcg) -> tuple[str, ...] | None:
    if not h.edges:
        return None
    preds: dict[str, list[str]] = {v: [] for v in h.order}
    for e in h.edges:
        preds[e.dst].append(e.src)

    def rank(path: tuple[str, ...]) -> tuple:
        return (-len(path), h.spans[path[0]][0][0], path)

    best_at: dict[str, tuple[str, ...]] = {}
    for v in h.order:
        incoming = [best_at[u] + (v,) for u in preds[v]]
        best_at[v] = min(incoming, key=rank) if incoming else (v,)
    best = min(best_at.values(), key=rank)
    return best if len(best) >= 2 else None


def _mutually_disjoint_prefix(path: tuple[str, ...], h: HierRcg) -> list[str]:
    # Interval-set disjointness is not transitive along a path once nodes
    # carry gapped lifetimes, so only keep nodes compatible with every
    # node kept so far. The first edge guarantees at least two survive.
    kept: list[str] = []
    for v in path:
        if all(spans_disjoint(h.spans[u], h.spans[v]) for u in kept):
            kept.append(v)
    return kept


def merge_structures(h: HierRcg, b: BoundGraph) -> BoundGraph:
    """Fold register-compatible same-kind nodes together until no edge
    remains.

    Each step merges the longest mutually disjoint path into one node:
    members concatenate in chronological order, capacity is the largest
    constituent capacity (constituents are never co-resident), and the
    lifetime is the union of the constituent interval sets.
    """
    nodes = {n.id: n for n in b.nodes}
    graph = h
    while True:
        path = _longest_disjoint_path(graph)
        if path is None:
            break
        group = _mutually_disjoint_prefix(path, graph)
        picked = sorted((nodes[v] for v in group), key=_node_key)
        members = tuple(m for n in picked for m in n.members)
        lifetime = tuple(sorted(iv for n in picked for iv in n.lifetime))
        merged = HierNode(
            id=picked[0].id,
            kind=picked[0].kind,
            members=members,
            capacity=max(n.capacity for n in picked),
            lifetime=lifetime,
        )
        for n in picked:
            del nodes[n.id]
        nodes[merged.id] = merged
        graph = build_hier_rcg(
            BoundGraph(nodes=tuple(sorted(nodes.values(), key=_node_key)), rcg=b.rcg)
        )
    return BoundGraph(nodes=tuple(sorted(nodes.values(), key=_node_key)), rcg=b.rcg)
