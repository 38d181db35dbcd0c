"""Resource compatibility graph: pairwise storage-compatibility tagging.

Every chronologically ordered pair of data gets at most one tag saying
which shared storage discipline the two can legally inhabit:

- register: the later datum is written at or after the earlier one's
  last read, so one register can hold both in turn;
- fifo: lifetimes overlap and the later datum's reads all land after the
  earlier one has left, so queue order matches write order;
- lifo: the later datum's whole lifetime nests either before the earlier
  one's first read or between two of its consecutive reads, so stack
  order works.

Tags are mutually exclusive consequences of the lifetime inequalities.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from enum import Enum
from itertools import pairwise
from typing import Mapping

from . import _kernels
from .schedule import Lifetime, chrono_key


class CompatTag(Enum):
    REGISTER = "register"
    FIFO = "fifo"
    LIFO = "lifo"


_TAG_FROM_CODE = {
    _kernels.TAG_REGISTER: CompatTag.REGISTER,
    _kernels.TAG_FIFO: CompatTag.FIFO,
    _kernels.TAG_LIFO: CompatTag.LIFO,
}


@dataclass(frozen=True)
class RcgEdge:
    """Compatibility edge, oriented from the chronologically earlier
    vertex to the later one."""

    src: str
    dst: str
    tag: CompatTag


@dataclass
class Rcg:
    """Graph over data: vertex order is chronological, each vertex
    carries its lifetime, and at most one tagged edge joins a pair."""

    order: tuple[str, ...]
    lifetimes: dict[str, Lifetime]
    edges: tuple[RcgEdge, ...]
    _index: dict[tuple[str, str], CompatTag] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._index = {(e.src, e.dst): e.tag for e in self.edges}

    def tag(self, src: str, dst: str) -> CompatTag | None:
        """Tag of the oriented pair (src earlier than dst), if any."""
        return self._index.get((src, dst))

    @property
    def n_vertices(self) -> int:
        return len(self.order)


def register_compatible(a: Lifetime, b: Lifetime) -> bool:
    """b is written at or after a's last read (equality allowed: the
    read frees the slot before the write lands in the same cycle)."""
    return b.tau_min >= a.tau_max


def fifo_compatible(a: Lifetime, b: Lifetime) -> bool:
    """Lifetimes overlap and b's first read follows a's last read."""
    return b.tau_min > a.tau_min and b.tau_first > a.tau_max and b.tau_min < a.tau_max


def lifo_compatible(a: Lifetime, b: Lifetime) -> bool:
    """b nests before a's first read, or wholly between two consecutive
    reads of a."""
    if b.tau_min > a.tau_min and a.tau_first > b.tau_max:
        return True
    return any(r1 < b.tau_min and b.tau_max < r2 for r1, r2 in pairwise(a.reads))


def classify_pair(a: Lifetime, b: Lifetime) -> CompatTag | None:
    """Storage-compatibility tag for a chronologically ordered pair.

    The caller orients the pair; passing them out of order is a
    programming error.
    """
    if chrono_key(a) >= chrono_key(b):
        raise ValueError(
            f"classify_pair: {a.data_id!r} must precede {b.data_id!r} "
            "in chronological order"
        )
    if register_compatible(a, b):
        return CompatTag.REGISTER
    if fifo_compatible(a, b):
        return CompatTag.FIFO
    if lifo_compatible(a, b):
        return CompatTag.LIFO
    return None


def build_rcg(lifetimes: Mapping[str, Lifetime]) -> Rcg:
    """Classify all pairs and assemble the compatibility graph.

    Vertices are ordered chronologically; edges are emitted in (src, dst)
    order. The pair sweep runs on the selected kernel backend, which
    mirrors classify_pair exactly.
    """
    order = sorted(lifetimes, key=lambda d: chrono_key(lifetimes[d]))
    lts = [lifetimes[d] for d in order]

    tmin = array("q", (lt.tau_min for lt in lts))
    tmax = array("q", (lt.tau_max for lt in lts))
    tfirst = array("q", (lt.tau_first for lt in lts))
    roff = array("q", [0])
    rdates = array("q")
    for lt in lts:
        rdates.extend(lt.reads)
        roff.append(len(rdates))

    ei, ej, et = _kernels.pair_tags(tmin, tmax, tfirst, roff, rdates)
    edges = tuple(
        RcgEdge(order[i], order[j], _TAG_FROM_CODE[t])
        for i, j, t in zip(ei, ej, et)
    )
    return Rcg(order=tuple(order), lifetimes={d: lifetimes[d] for d in order}, edges=edges)


def semantic_oracle(a: Lifetime, b: Lifetime, kind: CompatTag) -> bool:
    """Replay both data through one storage element of the given kind.

    Pushes at the write date, non-destructive front/top access at
    intermediate reads, removal at the last read; reads precede writes
    within a cycle. True iff every access finds the datum where the
    discipline requires it (fifo: front; lifo: top; register: sole
    resident).
    """
    steps = []
    for owner_rank, lt in enumerate((a, b)):
        steps.append((lt.tau_min, 1, owner_rank, "push", lt.data_id))
        for r in lt.reads[:-1]:
            steps.append((r, 0, owner_rank, "peek", lt.data_id))
        steps.append((lt.tau_max, 0, owner_rank, "pull", lt.data_id))
    steps.sort()

    if kind is CompatTag.REGISTER:
        held: str | None = None
        for _, _, _, op, d in steps:
            if op == "push":
                if held is not None:
                    return False
                held = d
            else:
                if held != d:
                    return False
                if op == "pull":
                    held = None
        return True

    store: list[str] = []
    front = 0 if kind is CompatTag.FIFO else -1
    for _, _, _, op, d in steps:
        if op == "push":
            store.append(d)
        else:
            if not store or store[front] != d:
                return False
            if op == "pull":
                store.pop(front)
    return True


def dump_rcg(g: Rcg) -> str:
    """Debug dump: one vertex line (id, write date, last read), one edge
    line (src dst TAG). Format is for external visualization only and
    not stability-guaranteed."""
    lines = [f"# rcg vertices={len(g.order)} edges={len(g.edges)}"]
    for v in g.order:
        lt = g.lifetimes[v]
        lines.append(f"v {v} {lt.tau_min} {lt.tau_max}")
    for e in g.edges:
        lines.append(f"e {e.src} {e.dst} {e.tag.name}")
    return "\n".join(lines) + "\n"
