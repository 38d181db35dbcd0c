"""Storage binding: carve FIFO/LIFO chains out of the compatibility
graph, size them, and bind every datum to a storage structure.

The greedy pass repeatedly takes the chain covering the most data among
the enabled kinds, filters it against the user knobs (minimum member
count, minimum fill), and turns it into a hierarchical node; leftovers
become one-place registers. Chains found on the graph always respect
their discipline by construction, but a replay guard double-checks
multi-read members and evicts any offender to a register.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from .rcg import CompatTag, Rcg
from .schedule import Lifetime, chrono_key

Interval = tuple[int, int]


@dataclass(frozen=True)
class GreedyConfig:
    """User knobs for the greedy binder.

    min_len: smallest member count for an accepted fifo/lifo.
    fill_threshold: smallest accepted fill factor, in [0, 1].
    priority: which kind wins a tie between equally long chains.
    """

    min_len: int = 2
    fill_threshold: float = 0.0
    fifo_enabled: bool = True
    lifo_enabled: bool = True
    priority: str = "fifo_first"  # "fifo_first" | "lifo_first"

    def __post_init__(self) -> None:
        if self.priority not in ("fifo_first", "lifo_first"):
            raise ValueError(f"unknown priority {self.priority!r}")
        if not 0.0 <= self.fill_threshold <= 1.0:
            raise ValueError("fill_threshold must be within [0, 1]")
        if (self.fifo_enabled or self.lifo_enabled) and self.min_len < 2:
            raise ValueError("min_len must be at least 2 when fifo or lifo is enabled")

    def to_json_dict(self) -> dict:
        return {
            "min_len": self.min_len,
            "fill": self.fill_threshold,
            "fifo": self.fifo_enabled,
            "lifo": self.lifo_enabled,
            "priority": self.priority,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GreedyConfig":
        unknown = set(doc) - {"min_len", "fill", "fifo", "lifo", "priority"}
        if unknown:
            raise ValueError(f"config: unknown field {sorted(unknown)[0]!r}")
        return cls(
            min_len=doc.get("min_len", 2),
            fill_threshold=doc.get("fill", 0.0),
            fifo_enabled=doc.get("fifo", True),
            lifo_enabled=doc.get("lifo", True),
            priority=doc.get("priority", "fifo_first"),
        )


@dataclass(frozen=True)
class CandidateStructure:
    """A chain of same-tag edges proposed for binding."""

    kind: CompatTag
    members: tuple[str, ...]
    capacity: int
    lifetime: Interval
    fill: float


@dataclass(frozen=True)
class HierNode:
    """A bound storage structure: ordered members plus the structure's
    own lifetime, kept as a sorted set of disjoint intervals so merged
    nodes can carry gaps."""

    id: str
    kind: CompatTag
    members: tuple[str, ...]
    capacity: int
    lifetime: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if self.kind is CompatTag.REGISTER and self.capacity != 1:
            raise ValueError(f"register node {self.id!r} must have capacity 1")
        spans = self.lifetime
        if any(b[0] < a[1] for a, b in zip(spans, spans[1:])):
            raise ValueError(f"node {self.id!r}: lifetime intervals overlap")

    @property
    def start(self) -> int:
        return self.lifetime[0][0]


@dataclass(frozen=True)
class BoundGraph:
    """Binding result: every datum in exactly one node; the source graph
    is retained for audit."""

    nodes: tuple[HierNode, ...]
    rcg: Rcg

    @property
    def total_capacity(self) -> int:
        return sum(n.capacity for n in self.nodes)

    def node_of(self, data_id: str) -> HierNode:
        for n in self.nodes:
            if data_id in n.members:
                return n
        raise KeyError(data_id)

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "id": n.id,
                    "kind": n.kind.value,
                    "members": list(n.members),
                    "capacity": n.capacity,
                    "lifetime": [list(iv) for iv in n.lifetime],
                }
                for n in self.nodes
            ]
        }


def structure_lifetime(
    members: Iterable[str], kind: CompatTag, lifetimes: Mapping[str, Lifetime]
) -> Interval:
    """Usage interval of a chain: a fifo spans first write to last
    member's last read; a lifo is bounded by its first (outermost)
    member, which every other member nests inside."""
    ms = list(members)
    first = lifetimes[ms[0]]
    if kind is CompatTag.LIFO:
        return (first.tau_min, first.tau_max)
    last = lifetimes[ms[-1]]
    return (first.tau_min, last.tau_max)


def size_fifo(members: Iterable[str], g: Rcg) -> int:
    """Queue depth needed by a fifo chain: one more than the largest
    number of in-chain fifo edges entering any member, i.e. the most
    chain data resident when a member arrives."""
    ms = list(members)
    worst = 0
    for v in ms:
        s_v = sum(1 for u in ms if u != v and g.tag(u, v) is CompatTag.FIFO)
        worst = max(worst, s_v)
    return 1 + worst


def size_lifo(members: Iterable[str]) -> int:
    """Stack depth of a lifo chain: all members nest, so all can be
    resident at once."""
    return len(list(members))


def fill_factor(
    members: Iterable[str], capacity: int, lifetimes: Mapping[str, Lifetime]
) -> float:
    """Time-averaged occupancy over capacity x lifespan, clamped to
    [0, 1]. Member live cycles are counted write-through-last-read
    inclusive."""
    ms = list(members)
    start = min(lifetimes[m].tau_min for m in ms)
    end = max(lifetimes[m].tau_max for m in ms)
    span = end - start + 1
    live = sum(
        min(lifetimes[m].tau_max, end) - max(lifetimes[m].tau_min, start) + 1
        for m in ms
    )
    return min(1.0, live / (capacity * span))


def longest_chain(
    g: Rcg, kind: CompatTag, within: set[str] | None = None
) -> CandidateStructure | None:
    """Maximum-length path of same-tag edges over the (optionally
    restricted) vertex set.

    The tag-restricted subgraph is a DAG in chronological order, so one
    forward pass finds the longest path ending at each vertex. Ties are
    broken by earliest first-member write date, then lexicographic
    member ids. None when no edge of the kind survives the restriction.
    """
    ids = [v for v in g.order if within is None or v in within]
    if len(ids) < 2:
        return None
    alive = set(ids)
    preds: dict[str, list[str]] = defaultdict(list)
    for e in g.edges:
        if e.tag is kind and e.src in alive and e.dst in alive:
            preds[e.dst].append(e.src)

    def path_rank(path: tuple[str, ...]) -> tuple:
        return (-len(path), g.lifetimes[path[0]].tau_min, path)

    best_at: dict[str, tuple[str, ...]] = {}
    for v in ids:
        incoming = [best_at[u] + (v,) for u in preds.get(v, ())]
        best_at[v] = min(incoming, key=path_rank) if incoming else (v,)

    best = min(best_at.values(), key=path_rank)
    if len(best) < 2:
        return None
    capacity = size_fifo(best, g) if kind is CompatTag.FIFO else size_lifo(best)
    return CandidateStructure(
        kind=kind,
        members=best,
        capacity=capacity,
        lifetime=structure_lifetime(best, kind, g.lifetimes),
        fill=fill_factor(best, capacity, g.lifetimes),
    )


def replay_chain(
    members: Iterable[str], kind: CompatTag, lifetimes: Mapping[str, Lifetime]
) -> str | None:
    """Replay a chain's members through one element of its kind and
    return the first datum whose read misses the front/top, or None when
    the discipline holds throughout."""
    steps = []
    for m in members:
        lt = lifetimes[m]
        steps.append((lt.tau_min, 1, chrono_key(lt), "push", m))
        for r in lt.reads[:-1]:
            steps.append((r, 0, chrono_key(lt), "peek", m))
        steps.append((lt.tau_max, 0, chrono_key(lt), "pull", m))
    steps.sort()
    store: list[str] = []
    front = 0 if kind is CompatTag.FIFO else -1
    for _, _, _, op, d in steps:
        if op == "push":
            store.append(d)
        else:
            if not store or store[front] != d:
                return d
            if op == "pull":
                store.pop(front)
    return None


def _candidate_rank(cfg: GreedyConfig):
    lead = CompatTag.FIFO if cfg.priority == "fifo_first" else CompatTag.LIFO

    def rank(c: CandidateStructure) -> tuple:
        return (-len(c.members), c.kind is not lead, c.lifetime[0], c.members)

    return rank


def _greedy_pass(
    g: Rcg, cfg: GreedyConfig, barred: set[str]
) -> list[tuple[CompatTag, tuple[str, ...], int, Interval]]:
    kinds = []
    if cfg.fifo_enabled:
        kinds.append(CompatTag.FIFO)
    if cfg.lifo_enabled:
        kinds.append(CompatTag.LIFO)

    rank = _candidate_rank(cfg)
    unbound = set(g.order)
    chosen: list[tuple[CompatTag, tuple[str, ...], int, Interval]] = []
    while True:
        pool = unbound - barred
        candidates = [c for k in kinds if (c := longest_chain(g, k, pool)) is not None]
        candidates.sort(key=rank)
        accepted = next(
            (
                c
                for c in candidates
                if len(c.members) >= cfg.min_len and c.fill >= cfg.fill_threshold
            ),
            None,
        )
        if accepted is None:
            break
        chosen.append((accepted.kind, accepted.members, accepted.capacity, accepted.lifetime))
        unbound -= set(accepted.members)
    return chosen


def greedy_bind(g: Rcg, cfg: GreedyConfig, lifetimes: Mapping[str, Lifetime]) -> BoundGraph:
    """Bind every datum to a storage structure under the given knobs.

    Accepted chains become fifo/lifo nodes sized by their discipline;
    everything left becomes a one-place register node. Any chain member
    whose replay misses the front/top (possible only for multi-read
    data) is evicted to a register and the pass re-runs without it.
    """
    barred: set[str] = set()
    while True:
        chosen = _greedy_pass(g, cfg, barred)
        offender = None
        for kind, members, _, _ in chosen:
            offender = replay_chain(members, kind, lifetimes)
            if offender is not None:
                break
        if offender is None:
            break
        barred.add(offender)

    nodes = []
    counters = {CompatTag.FIFO: 0, CompatTag.LIFO: 0}
    bound: set[str] = set()
    for kind, members, capacity, span in chosen:
        label = f"{kind.value}{counters[kind]}"
        counters[kind] += 1
        nodes.append(
            HierNode(id=label, kind=kind, members=members, capacity=capacity, lifetime=(span,))
        )
        bound |= set(members)

    rest = sorted(set(g.order) - bound, key=lambda d: chrono_key(lifetimes[d]))
    for idx, d in enumerate(rest):
        lt = lifetimes[d]
        nodes.append(
            HierNode(
                id=f"register{idx}",
                kind=CompatTag.REGISTER,
                members=(d,),
                capacity=1,
                lifetime=((lt.tau_min, lt.tau_max),),
            )
        )
    nodes.sort(key=lambda n: (n.start, n.id))
    return BoundGraph(nodes=tuple(nodes), rcg=g)
